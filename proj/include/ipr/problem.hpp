#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ipr/types.hpp"

namespace ipr {

/// Dense data of a standard-form linear program
///   min c^T x  s.t.  A x = b,  x >= 0.
/// Admitted into lp_problem only when A has full row rank.
struct LpData {
  Matrix A;  // m x n
  Vector b;  // m
  Vector c;  // n
};

struct KnownSolution {
  Vector x;
  double f = 0.0;
};

/// A smooth nonlinear program
///   min f(x)  s.t.  h(x) = 0,  g(x) >= 0,
/// described by pure, reentrant evaluation callbacks. Jacobians store the
/// constraint gradients as columns: eval_jac_h(x) is n x m with column i
/// equal to grad h_i, eval_jac_g(x) is n x m_ineq. The Lagrangian Hessian is
/// hess f - sum_i lambda_i hess h_i - sum_j s_j hess g_j.
struct ProblemSpec {
  std::string name;
  std::string description;

  Index n = 0;         // number of variables
  Index m = 0;         // number of equality constraints
  Index num_ineq = 0;  // number of inequality constraints

  std::function<double(const Vector&)> eval_f;
  std::function<Vector(const Vector&)> eval_grad_f;
  std::function<Vector(const Vector&)> eval_h;
  std::function<Matrix(const Vector&)> eval_jac_h;
  std::function<Vector(const Vector&)> eval_g;
  std::function<Matrix(const Vector&)> eval_jac_g;
  std::function<Matrix(const Vector&, const Vector&, const Vector&)>
      eval_hess_lagrangian;

  Vector standard_start;
  std::optional<KnownSolution> known_solution;

  /// Set for standard-form LPs, which qualify for the reduced Newton path.
  bool is_lp = false;
  std::optional<LpData> lp;
};

/// The Wächter–Biegler test problem: min x s.t. x^2 - 1 >= 0, x - 2 >= 0,
/// standard start x0 = -4, unique minimizer x* = 2.
ProblemSpec wb_problem();

/// Wraps dense LP data as a ProblemSpec (f = c^T x, h = Ax - b, g(x) = x,
/// null Lagrangian Hessian). Throws std::invalid_argument when dimensions are
/// inconsistent or A is rank deficient.
ProblemSpec lp_problem(LpData data);

/// Reads the plain-text LP format: line 1 "n m", line 2 the n values of c,
/// line 3 the m values of b, then m rows of A. '#' starts a comment.
LpData lp_from_file(const std::string& path);

/// Deterministic random LP with an interior primal-dual feasible pair
/// (bounded optimum). Same (n, m, seed) always yields the same data.
LpData random_lp(Index n, Index m, unsigned seed);

/// Looks up a built-in problem by name ("wb", "hs1", ..., or "lp_rand<k>"
/// for the seeded LP family). Throws std::invalid_argument listing the
/// available names when the name is unknown.
ProblemSpec registry(const std::string& name);

/// Names of all non-generated registry problems (wb + the HS subset).
std::vector<std::string> registry_names();

}  // namespace ipr
