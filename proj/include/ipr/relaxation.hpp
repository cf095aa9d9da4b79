#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "ipr/problem.hpp"
#include "ipr/types.hpp"

namespace ipr {

/// The smooth relaxation pair (z, y) built from constraint values w, duals s
/// and the parameters (mu, rho). Componentwise,
///
///   z_j = (sqrt((s_j - rho w_j)^2 + 4 rho mu) - (s_j - rho w_j)) / (2 rho),
///   y_j = (sqrt((s_j - rho w_j)^2 + 4 rho mu) + (s_j - rho w_j)) / (2 rho),
///
/// so that z_j >= 0, y_j >= 0, z_j y_j = mu/rho and z_j - w_j = y_j - s_j/rho.
struct RelaxationPair {
  Vector z;
  Vector y;
  double mu = 0.0;
  double rho = 1.0;
};

/// Diagonal partial derivatives of the pair with respect to the constraint
/// value w, the dual s, and the parameters mu and rho.
struct PairJacobian {
  Vector dz_dw, dy_dw;
  Vector dz_ds, dy_ds;
  Vector dz_dmu, dy_dmu;
  Vector dz_drho, dy_drho;
};

namespace detail {

/// Scalar kernel for one component of the pair. The smaller root is recovered
/// through the product identity 4 rho mu = (r - t)(r + t) so that no
/// subtraction of nearly equal quantities occurs.
template <typename Scalar>
inline void relaxation_roots(Scalar w, Scalar s, Scalar mu, Scalar rho,
                             Scalar& z, Scalar& y) {
  const Scalar t = s - rho * w;
  const Scalar r = std::sqrt(t * t + 4 * rho * mu);
  if (t > Scalar(0)) {
    z = 2 * mu / (r + t);
    y = (r + t) / (2 * rho);
  } else {
    z = (r - t) / (2 * rho);
    y = (t < Scalar(0)) ? 2 * mu / (r - t) : (r + t) / (2 * rho);
  }
}

}  // namespace detail

/// Evaluates the relaxation pair for constraint values w and duals s.
/// Requires rho > 0 and mu >= 0; w and s must have equal length.
inline RelaxationPair eval_pair(const Eigen::Ref<const Vector>& w,
                                const Eigen::Ref<const Vector>& s, double mu,
                                double rho) {
  if (w.size() != s.size()) {
    throw std::invalid_argument("eval_pair: w and s must have equal length");
  }
  if (!(rho > 0)) {
    throw std::invalid_argument("eval_pair: rho must be positive");
  }
  if (mu < 0) {
    throw std::invalid_argument("eval_pair: mu must be nonnegative");
  }
  RelaxationPair pair;
  pair.mu = mu;
  pair.rho = rho;
  pair.z.resize(w.size());
  pair.y.resize(w.size());
  for (Index j = 0; j < w.size(); ++j) {
    detail::relaxation_roots(w[j], s[j], mu, rho, pair.z[j], pair.y[j]);
  }
  return pair;
}

/// Analytic partial derivatives of (z, y) in (w, s, mu, rho). Requires
/// z_j + y_j > 0 for every component, which holds whenever mu > 0; at mu = 0
/// the pair can sit on the kink of the max, where these formulas are
/// undefined.
inline PairJacobian eval_pair_derivatives(const RelaxationPair& pair,
                                          const Eigen::Ref<const Vector>& w,
                                          const Eigen::Ref<const Vector>& s) {
  const Index m = pair.z.size();
  if (w.size() != m || s.size() != m) {
    throw std::invalid_argument(
        "eval_pair_derivatives: w/s size does not match the pair");
  }
  const double rho = pair.rho;
  PairJacobian jac;
  for (Vector* v : {&jac.dz_dw, &jac.dy_dw, &jac.dz_ds, &jac.dy_ds,
                    &jac.dz_dmu, &jac.dy_dmu, &jac.dz_drho, &jac.dy_drho}) {
    v->resize(m);
  }
  for (Index j = 0; j < m; ++j) {
    const double z = pair.z[j];
    const double y = pair.y[j];
    const double sum = z + y;
    if (!(sum > 0)) {
      throw std::domain_error(
          "eval_pair_derivatives: singular pair, z_j + y_j = 0 at component " +
          std::to_string(j));
    }
    const double zf = z / sum;
    const double yf = y / sum;
    jac.dz_dw[j] = zf;
    jac.dy_dw[j] = -yf;
    jac.dz_ds[j] = -zf / rho;
    jac.dy_ds[j] = yf / rho;
    jac.dz_dmu[j] = 1.0 / (rho * sum);
    jac.dy_dmu[j] = jac.dz_dmu[j];
    jac.dz_drho[j] = zf * (w[j] - z) / rho;
    jac.dy_drho[j] = -yf * (y + w[j]) / rho;
  }
  return jac;
}

/// One term of the mini-max objective:
///   G(w, s; mu, rho) = -mu ln z + s (z - w) + (rho/2) (z - w)^2,
/// with z the relaxation root for (w, s, mu, rho). For fixed w the map
/// s -> G is strictly concave and, for w > 0, attains its maximum -mu ln w
/// at s = mu / w.
inline double eval_G(double w, double s, double mu, double rho) {
  if (!(rho > 0)) {
    throw std::invalid_argument("eval_G: rho must be positive");
  }
  if (mu < 0) {
    throw std::invalid_argument("eval_G: mu must be nonnegative");
  }
  double z, y;
  detail::relaxation_roots(w, s, mu, rho, z, y);
  if (mu > 0 ? !(z > 0) : z <= 0) {
    throw std::domain_error("eval_G: logarithm undefined, z <= 0");
  }
  const double d = z - w;
  const double log_term = (mu == 0.0) ? 0.0 : -mu * std::log(z);
  return log_term + s * d + 0.5 * rho * d * d;
}

/// The mini-max objective F(x, s; mu, rho) = f(x) + sum_j G(g_j(x), s_j).
/// Finite for any x and finite s whenever mu > 0, unlike the log barrier.
inline double eval_F(const ProblemSpec& problem,
                     const Eigen::Ref<const Vector>& x,
                     const Eigen::Ref<const Vector>& s, double mu,
                     double rho) {
  if (x.size() != problem.n || s.size() != problem.num_ineq) {
    throw std::invalid_argument("eval_F: dimension mismatch");
  }
  if (!(mu > 0)) {
    throw std::invalid_argument("eval_F: mu must be positive");
  }
  const Vector g = problem.eval_g(x);
  double value = problem.eval_f(x);
  for (Index j = 0; j < g.size(); ++j) {
    value += eval_G(g[j], s[j], mu, rho);
  }
  return value;
}

}  // namespace ipr
