#pragma once

#include <functional>
#include <utility>

#include "ipr/newton.hpp"
#include "ipr/problem.hpp"
#include "ipr/state.hpp"
#include "ipr/types.hpp"

namespace ipr {

/// Result of the geometric barrier reduction loop.
struct GuardResult {
  double mu = 0.0;
  RelaxationPair pair;
  double phi = 0.0;
  int loops = 0;
  /// True when the loop cap was reached with the reduction condition still
  /// active (the theoretical infinite loop of the convergence analysis).
  bool capped = false;
};

/// Reduces mu geometrically while mu > max(eta * phi(mu), eps), re-evaluating
/// the pair and merit at every trial value. phi_eval must recompute both at
/// the given mu (phi depends on mu through z).
GuardResult barrier_guard(
    const std::function<std::pair<RelaxationPair, double>(double)>& phi_eval,
    double mu, const SolverConfig& cfg);

/// gamma = min(gamma0, mu / phi); guarantees gamma * phi <= mu. Requires
/// phi > 0.
double select_gamma(const SolverConfig& cfg, double mu, double phi);

/// Backtracking line search on the merit: returns the largest alpha in
/// {1, delta, delta^2, ...} with
///   phi(mu + alpha delta_mu; x + alpha d_x, ...) <= (1 - 2 tau alpha) phi,
/// rho held fixed. Throws SmallStepError once alpha would drop below
/// delta^min_step_power.
double line_search(const ProblemSpec& problem, const Iterate& iter,
                   double delta_mu, const Direction& d,
                   const SolverConfig& cfg);

/// rho <- max(rho, sigma ||s||_inf / max(||x||, 1)); never decreases.
double update_rho(double rho, const Vector& x, const Vector& s,
                  const SolverConfig& cfg);

/// Builds a consistent Iterate at (x, lambda, s, mu, rho): evaluates the
/// pair, residuals, KKT error and the regularized Lagrangian Hessian.
Iterate make_iterate(const ProblemSpec& problem, const Vector& x,
                     const Vector& lambda, const Vector& s, double mu,
                     double rho);

using StepObserver = std::function<void(const StepRecord&)>;

struct SolveOptions {
  /// Use the reduced normal-equations path for standard-form LPs.
  bool lp_reduced = false;
  /// Called once per accepted step with full diagnostics.
  StepObserver observer;
};

/// Runs the full iteration: initial guard, then per iteration the
/// termination test, barrier direction, Newton solve, merit line search,
/// simultaneous (mu, x, lambda, s) update, rho update, guard, and gamma
/// re-selection. Empty lambda0/s0 select the defaults (least-squares
/// multipliers, all-one duals); an empty x0 selects the problem's standard
/// start. The returned trace follows the k, mu, x, s, f, v, phi, E schema.
SolveReport solve(const ProblemSpec& problem, const Vector& x0,
                  const Vector& lambda0, const Vector& s0,
                  const SolverConfig& cfg = {},
                  const SolveOptions& options = {});

}  // namespace ipr
