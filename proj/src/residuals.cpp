#include "ipr/residuals.hpp"

#include <stdexcept>

namespace ipr {

ResidualBundle kkt_residuals(const Vector& grad_f, const Matrix& jac_h,
                             const Matrix& jac_g, const Vector& h_vals,
                             const Vector& g_vals, const Vector& lambda,
                             const Vector& s, const RelaxationPair& pair) {
  if (jac_h.cols() != lambda.size() || jac_g.cols() != s.size() ||
      h_vals.size() != lambda.size() || g_vals.size() != s.size() ||
      pair.z.size() != g_vals.size()) {
    throw std::invalid_argument("kkt_residuals: dimension mismatch");
  }
  ResidualBundle bundle;
  bundle.r_dual = grad_f;
  if (lambda.size() > 0) {
    bundle.r_dual -= jac_h * lambda;
  }
  if (s.size() > 0) {
    bundle.r_dual -= jac_g * s;
  }
  bundle.r_eq = h_vals;
  bundle.r_relax = pair.z - g_vals;
  bundle.phi = 0.5 * (bundle.r_dual.squaredNorm() + bundle.r_eq.squaredNorm() +
                      bundle.r_relax.squaredNorm());
  return bundle;
}

ResidualBundle kkt_residuals(const ProblemSpec& problem, const Vector& x,
                             const Vector& lambda, const Vector& s,
                             const RelaxationPair& pair) {
  if (x.size() != problem.n || lambda.size() != problem.m ||
      s.size() != problem.num_ineq) {
    throw std::invalid_argument("kkt_residuals: dimension mismatch");
  }
  return kkt_residuals(problem.eval_grad_f(x), problem.eval_jac_h(x),
                       problem.eval_jac_g(x), problem.eval_h(x),
                       problem.eval_g(x), lambda, s, pair);
}

double merit_phi(const ProblemSpec& problem, const Vector& x,
                 const Vector& lambda, const Vector& s, double mu,
                 double rho) {
  const Vector g_vals = problem.eval_g(x);
  const RelaxationPair pair = eval_pair(g_vals, s, mu, rho);
  return kkt_residuals(problem.eval_grad_f(x), problem.eval_jac_h(x),
                       problem.eval_jac_g(x), problem.eval_h(x), g_vals,
                       lambda, s, pair)
      .phi;
}

KktError error_E(const Vector& grad_f, const Matrix& jac_h,
                 const Matrix& jac_g, const Vector& h_vals,
                 const Vector& g_vals, const Vector& lambda, const Vector& s) {
  if (jac_h.cols() != lambda.size() || jac_g.cols() != s.size() ||
      h_vals.size() != lambda.size() || g_vals.size() != s.size()) {
    throw std::invalid_argument("error_E: dimension mismatch");
  }
  Vector r_dual = grad_f;
  if (lambda.size() > 0) {
    r_dual -= jac_h * lambda;
  }
  if (s.size() > 0) {
    r_dual -= jac_g * s;
  }
  KktError err;
  err.dual = r_dual.size() > 0 ? r_dual.lpNorm<Eigen::Infinity>() : 0.0;
  err.feas_eq = h_vals.size() > 0 ? h_vals.lpNorm<Eigen::Infinity>() : 0.0;
  if (g_vals.size() > 0) {
    err.feas_ineq = (-(g_vals + s)).cwiseMax(0.0).lpNorm<Eigen::Infinity>();
    err.comp = g_vals.cwiseProduct(s).lpNorm<Eigen::Infinity>();
  }
  err.value = std::max({err.dual, err.feas_eq, err.feas_ineq, err.comp});
  return err;
}

KktError error_E(const ProblemSpec& problem, const Vector& x,
                 const Vector& lambda, const Vector& s) {
  if (x.size() != problem.n || lambda.size() != problem.m ||
      s.size() != problem.num_ineq) {
    throw std::invalid_argument("error_E: dimension mismatch");
  }
  return error_E(problem.eval_grad_f(x), problem.eval_jac_h(x),
                 problem.eval_jac_g(x), problem.eval_h(x), problem.eval_g(x),
                 lambda, s);
}

}  // namespace ipr
