#include "ipr/newton.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace ipr {

std::pair<Matrix, double> regularize_hessian(const Matrix& B) {
  if (B.rows() != B.cols()) {
    throw std::invalid_argument("regularize_hessian: matrix must be square");
  }
  Matrix sym = 0.5 * (B + B.transpose());
  if (!sym.allFinite()) {
    throw std::invalid_argument(
        "regularize_hessian: non-finite Hessian entries");
  }
  if (sym.rows() == 0) {
    return {sym, 0.0};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues()(0);
  double xi = 0.0;
  if (min_eig < -1e-12) {
    xi = -min_eig;
    sym.diagonal().array() += xi;
  }
  return {std::move(sym), xi};
}

KktSystem assemble_system(const ProblemSpec& problem, const Iterate& iter,
                          double delta_mu) {
  const Index n = problem.n;
  const Index m = problem.m;
  const Index mi = problem.num_ineq;
  if (iter.x.size() != n || iter.lambda.size() != m || iter.s.size() != mi ||
      iter.hessian.rows() != n || iter.hessian.cols() != n) {
    throw std::invalid_argument("assemble_system: dimension mismatch");
  }
  if (!(iter.mu > 0)) {
    throw std::invalid_argument(
        "assemble_system: mu = 0 makes the relaxation block singular");
  }

  const Matrix jac_h = problem.eval_jac_h(iter.x);
  const Matrix jac_g = problem.eval_jac_g(iter.x);

  KktSystem sys;
  sys.n = n;
  sys.m = m;
  sys.m_ineq = mi;
  sys.delta_mu = delta_mu;
  const Index order = n + m + mi;
  sys.matrix = Matrix::Zero(order, order);
  sys.rhs.resize(order);

  sys.matrix.topLeftCorner(n, n) = iter.hessian;
  if (m > 0) {
    sys.matrix.block(0, n, n, m) = -jac_h;
    sys.matrix.block(n, 0, m, n) = jac_h.transpose();
  }
  if (mi > 0) {
    sys.matrix.block(0, n + m, n, mi) = -jac_g;
    for (Index j = 0; j < mi; ++j) {
      const double sum = iter.pair.z[j] + iter.pair.y[j];
      sys.matrix.block(n + m + j, 0, 1, n) =
          (iter.pair.y[j] / sum) * jac_g.col(j).transpose();
      sys.matrix(n + m + j, n + m + j) =
          iter.pair.z[j] / (iter.rho * sum);
      sys.rhs[n + m + j] =
          iter.residuals.r_relax[j] + delta_mu / (iter.rho * sum);
    }
  }
  sys.rhs.head(n) = -iter.residuals.r_dual;
  if (m > 0) {
    sys.rhs.segment(n, m) = -iter.residuals.r_eq;
  }
  return sys;
}

namespace {

constexpr double kRcondFloor = 1e-14;

void check_residual_or_refine(const Matrix& K, const Vector& rhs,
                              const Eigen::PartialPivLU<Matrix>& lu,
                              Vector& d) {
  const double bound = 1e-10 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
  Vector residual = K * d - rhs;
  if (residual.lpNorm<Eigen::Infinity>() <= bound) {
    return;
  }
  d -= lu.solve(residual);
  residual = K * d - rhs;
  if (!(residual.lpNorm<Eigen::Infinity>() <= bound)) {
    throw DegenerateSystemError(
        "solve_direction: residual bound not met after refinement");
  }
}

}  // namespace

Direction solve_direction(const KktSystem& system) {
  const Index order = system.matrix.rows();
  if (system.rhs.size() != order || system.matrix.cols() != order ||
      order != system.n + system.m + system.m_ineq) {
    throw std::invalid_argument("solve_direction: malformed system");
  }
  Eigen::PartialPivLU<Matrix> lu(system.matrix);
  if (!(lu.rcond() >= kRcondFloor)) {
    throw DegenerateSystemError(
        "solve_direction: KKT matrix is numerically singular");
  }
  Vector d = lu.solve(system.rhs);
  if (!d.allFinite()) {
    throw DegenerateSystemError("solve_direction: factorization breakdown");
  }
  check_residual_or_refine(system.matrix, system.rhs, lu, d);

  Direction dir;
  dir.d_mu = system.delta_mu;
  dir.d_x = d.head(system.n);
  dir.d_lambda = d.segment(system.n, system.m);
  dir.d_s = d.tail(system.m_ineq);
  return dir;
}

Direction lp_reduced_direction(const Matrix& A, const Vector& b,
                               const Vector& c, const Iterate& iter,
                               double delta_mu) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n || iter.x.size() != n ||
      iter.lambda.size() != m || iter.s.size() != n ||
      iter.pair.z.size() != n) {
    throw std::invalid_argument("lp_reduced_direction: dimension mismatch");
  }
  if (!(iter.mu > 0)) {
    throw std::invalid_argument("lp_reduced_direction: mu must be positive");
  }

  const Vector& z = iter.pair.z;
  const double mu = iter.mu;
  const double rho = iter.rho;
  const Vector r1 = c - A.transpose() * iter.lambda - iter.s;
  // z - x evaluated cancellation-free (z - x = 2(mu - x s)/(r + s + rho x)
  // when s + rho x > 0): the back-substitution multiplies it by rho z^2/mu,
  // which would amplify the rounding of a plain difference once mu is tiny.
  Vector zx(z.size());
  for (Index j = 0; j < z.size(); ++j) {
    const double t = iter.s[j] - rho * iter.x[j];
    const double u = iter.s[j] + rho * iter.x[j];
    const double r = std::sqrt(t * t + 4.0 * rho * mu);
    zx[j] = u > 0 ? 2.0 * (mu - iter.x[j] * iter.s[j]) / (r + u)
                  : (r - u) / (2.0 * rho);
  }
  const Vector z2 = z.array().square();

  const Matrix AZ = A * z.asDiagonal();
  const Matrix normal = AZ * AZ.transpose();
  Vector rhs = mu * (b - A * iter.x);
  rhs += AZ * z.cwiseProduct(r1);
  rhs -= A * (mu * zx + rho * z2.cwiseProduct(zx));
  rhs -= delta_mu * (A * z);

  Eigen::LDLT<Matrix> ldlt(normal);
  if (ldlt.info() != Eigen::Success || !(ldlt.rcond() >= kRcondFloor)) {
    throw DegenerateSystemError(
        "lp_reduced_direction: normal matrix A Z^2 A^T is numerically "
        "singular");
  }
  Direction dir;
  dir.d_mu = delta_mu;
  dir.d_lambda = ldlt.solve(rhs);
  {
    // One refinement pass keeps the normal-equations residual tight.
    Vector res = normal * dir.d_lambda - rhs;
    dir.d_lambda -= ldlt.solve(res);
  }
  dir.d_s = r1 - A.transpose() * dir.d_lambda;
  dir.d_x = zx + (rho / mu) * z2.cwiseProduct(zx) +
            (delta_mu * z - z2.cwiseProduct(dir.d_s)) / mu;
  if (!dir.d_lambda.allFinite() || !dir.d_x.allFinite() ||
      !dir.d_s.allFinite()) {
    throw DegenerateSystemError("lp_reduced_direction: non-finite direction");
  }
  return dir;
}

}  // namespace ipr
