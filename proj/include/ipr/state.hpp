#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ipr/relaxation.hpp"
#include "ipr/residuals.hpp"
#include "ipr/types.hpp"

namespace ipr {

/// All scalar parameters of the solver: mu0 = 0.1, rho0 = 1, eta = 10,
/// gamma0 = 0.001, delta = 0.5, tau = 0.01, sigma = 0.01, eps = 1e-8.
struct SolverConfig {
  double mu0 = 0.1;      // initial barrier parameter, > 0
  double rho0 = 1.0;     // initial penalty parameter, > 0
  double eta = 10.0;     // guard reduction factor, > 1
  double gamma0 = 1e-3;  // barrier coupling cap, in (0, 1)
  double delta = 0.5;    // backtracking factor, in (0, 1)
  double tau = 0.01;     // sufficient-decrease constant, in (0, 1)
  double sigma = 0.01;   // penalty growth constant, in (0, 1)
  double eps = 1e-8;     // termination tolerance, > 0

  int max_iters = 500;
  int min_step_power = 40;   // smallest step tried is delta^min_step_power
  int guard_max_loops = 200;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

enum class SolveStatus {
  kkt_solved,
  max_iters,
  small_step,
  degenerate_kkt,
  guard_converged,
};

std::string to_string(SolveStatus status);

/// Full per-iteration solver state. pair, residuals and error are kept
/// consistent with (x, lambda, s, mu, rho); hessian holds the regularized
/// Lagrangian Hessian used to assemble the Newton system, shift the applied
/// regularization.
struct Iterate {
  Vector x;
  Vector lambda;
  Vector s;
  double mu = 0.0;
  double rho = 1.0;
  double gamma = 1.0;
  RelaxationPair pair;
  ResidualBundle residuals;
  KktError error;
  Matrix hessian;
  double shift = 0.0;
  int k = 0;
};

/// One row of the iteration trace: k, mu, x, s, f, the infinity-norm
/// constraint violation v, the merit phi and the KKT error E.
struct TraceRow {
  int k = 0;
  double mu = 0.0;
  Vector x;
  Vector s;
  double f = 0.0;
  double v = 0.0;
  double phi = 0.0;
  double error = 0.0;
};

struct Counters {
  int iterations = 0;
  long f_evals = 0;
  long grad_evals = 0;
  double wall_time = 0.0;  // seconds
};

/// Diagnostic record of one accepted step, emitted through the observer hook.
/// Carries everything needed to re-check the line-search rule and the merit
/// directional derivative after the fact.
struct StepRecord {
  int k = 0;
  double mu = 0.0;   // barrier value the step was computed at
  double rho = 0.0;  // penalty value the step was computed at
  double gamma = 0.0;
  double phi = 0.0;  // merit at (x, lambda, s, mu, rho)
  Vector x, lambda, s;
  double delta_mu = 0.0;
  Vector d_x, d_lambda, d_s;
  double alpha = 0.0;
  double phi_trial = 0.0;      // merit accepted by the line search (rho fixed)
  double mu_after_step = 0.0;  // mu + alpha * delta_mu, before the guard
  double rho_after = 0.0;
  double mu_after_guard = 0.0;
  double phi_after_guard = 0.0;
  double min_z_over_mu = 0.0;  // min_j z_j / mu at the step's state
};

struct SolveReport {
  SolveStatus status = SolveStatus::max_iters;
  std::vector<TraceRow> trace;
  Counters counters;
  Vector x;        // final primal point
  Vector lambda;   // final equality multipliers
  Vector s;        // final inequality duals
  KktError error;  // KKT error at the final point
};

}  // namespace ipr
