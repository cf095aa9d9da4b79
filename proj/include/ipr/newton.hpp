#pragma once

#include <optional>
#include <utility>

#include <Eigen/Core>

#include "ipr/problem.hpp"
#include "ipr/state.hpp"
#include "ipr/types.hpp"

namespace ipr {

/// The assembled Newton system of order n + m + m_ineq with row blocks
/// (dual, equality, relaxation):
///
///   [ B        -jac_h   -jac_g              ] [d_x     ]   [ -r_dual  ]
///   [ jac_h^T   0        0                  ] [d_lambda] = [ -r_eq    ]
///   [ W Y jac_g^T  0    (1/rho) W Z         ] [d_s     ]   [ r_relax + (delta_mu/rho) W e ]
///
/// with W = (Z + Y)^{-1} diagonal. Reduces to the bound-constrained form
/// when jac_g = I.
struct KktSystem {
  Matrix matrix;
  Vector rhs;
  Index n = 0;
  Index m = 0;
  Index m_ineq = 0;
  double delta_mu = 0.0;
};

/// Newton step in (mu, x, lambda, s); alpha is set once the line search has
/// accepted a step size.
struct Direction {
  double d_mu = 0.0;
  Vector d_x;
  Vector d_lambda;
  Vector d_s;
  std::optional<double> alpha;
};

/// Symmetrizes B and adds the smallest shift xi >= 0 making it positive
/// semidefinite (xi = max(0, -lambda_min)). Returns (B + xi I, xi). Throws
/// std::invalid_argument on non-finite input.
std::pair<Matrix, double> regularize_hessian(const Matrix& B);

/// Assembles the Newton system at the iterate. Requires mu > 0 so the
/// relaxation block is invertible, and iter.hessian already regularized.
KktSystem assemble_system(const ProblemSpec& problem, const Iterate& iter,
                          double delta_mu);

/// Dense LU solve with partial pivoting. Verifies the residual bound
/// ||K d - rhs||_inf <= 1e-10 (1 + ||rhs||_inf), applying one step of
/// iterative refinement if needed. Throws DegenerateSystemError on
/// factorization breakdown or reciprocal condition estimate below 1e-14.
Direction solve_direction(const KktSystem& system);

/// LP specialization: solves the m x m normal system
///   (A Z^2 A^T) d_lambda = mu (b - A x) + A Z^2 (c - A^T lambda - s)
///                          - A (mu I + rho Z^2)(z - x) - delta_mu A Z e,
/// then back-substitutes d_s and d_x. Requires a standard-form LP state with
/// mu > 0 and A of full row rank.
Direction lp_reduced_direction(const Matrix& A, const Vector& b,
                               const Vector& c, const Iterate& iter,
                               double delta_mu);

}  // namespace ipr
