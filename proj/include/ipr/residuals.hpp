#pragma once

#include <Eigen/Core>

#include "ipr/problem.hpp"
#include "ipr/relaxation.hpp"
#include "ipr/types.hpp"

namespace ipr {

/// Residual vectors of the relaxed KKT system together with the merit value
///   phi = 1/2 ||r_dual||^2 + 1/2 ||r_eq||^2 + 1/2 ||r_relax||^2.
struct ResidualBundle {
  Vector r_dual;   // grad f - jac_h lambda - jac_g s   (length n)
  Vector r_eq;     // h(x)                              (length m)
  Vector r_relax;  // z - g(x)                          (length m_ineq)
  double phi = 0.0;
};

/// Infinity-norm KKT error of the original problem. value is the max of the
/// four components.
struct KktError {
  double dual = 0.0;      // ||grad f - jac_h lambda - jac_g s||_inf
  double feas_eq = 0.0;   // ||h||_inf
  double feas_ineq = 0.0; // ||max(-(g + s), 0)||_inf
  double comp = 0.0;      // ||g .* s||_inf
  double value = 0.0;
};

/// Residuals from already-evaluated problem data. pair must have been built
/// from (g_vals, s) at the same (mu, rho).
ResidualBundle kkt_residuals(const Vector& grad_f, const Matrix& jac_h,
                             const Matrix& jac_g, const Vector& h_vals,
                             const Vector& g_vals, const Vector& lambda,
                             const Vector& s, const RelaxationPair& pair);

/// Residuals at (x, lambda, s) with the pair supplied by the caller.
ResidualBundle kkt_residuals(const ProblemSpec& problem, const Vector& x,
                             const Vector& lambda, const Vector& s,
                             const RelaxationPair& pair);

/// Convenience composition: builds the pair from (g(x), s, mu, rho) and
/// returns phi only.
double merit_phi(const ProblemSpec& problem, const Vector& x,
                 const Vector& lambda, const Vector& s, double mu, double rho);

/// KKT error from already-evaluated problem data.
KktError error_E(const Vector& grad_f, const Matrix& jac_h,
                 const Matrix& jac_g, const Vector& h_vals,
                 const Vector& g_vals, const Vector& lambda, const Vector& s);

/// KKT error of the original problem at (x, lambda, s).
KktError error_E(const ProblemSpec& problem, const Vector& x,
                 const Vector& lambda, const Vector& s);

/// Barrier direction: delta_mu = -mu + gamma * phi. Nonpositive whenever
/// gamma * phi <= mu, which the guard establishes.
inline double delta_mu(double mu, double gamma, double phi) {
  return -mu + gamma * phi;
}

}  // namespace ipr
