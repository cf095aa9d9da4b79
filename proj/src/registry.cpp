#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ipr/problem.hpp"

// Hand-coded members of the Hock–Schittkowski collection with closed-form
// solutions, spanning general equality+inequality constraints, bound
// constraints, and equality-only problems. Starts are the published standard
// starts; where a start touches a declared bound it is moved inside by
// 1e-2 * max(1, |bound|) and the change is noted in the description.

namespace ipr {

namespace {

Matrix no_eq_jac(Index n) { return Matrix(n, 0); }

ProblemSpec hs1() {
  ProblemSpec p;
  p.name = "hs1";
  p.description = "Rosenbrock with the bound x2 >= -1.5 (inactive).";
  p.n = 2;
  p.m = 0;
  p.num_ineq = 1;
  p.eval_f = [](const Vector& x) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
  };
  p.eval_grad_f = [](const Vector& x) {
    const double a = x[1] - x[0] * x[0];
    Vector g(2);
    g << -400.0 * x[0] * a - 2.0 * (1.0 - x[0]), 200.0 * a;
    return g;
  };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return no_eq_jac(2); };
  p.eval_g = [](const Vector& x) {
    return Vector(Vector::Constant(1, x[1] + 1.5));
  };
  p.eval_jac_g = [](const Vector&) {
    Matrix J(2, 1);
    J << 0.0, 1.0;
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector& x, const Vector&, const Vector&) {
    Matrix B(2, 2);
    B << -400.0 * x[1] + 1200.0 * x[0] * x[0] + 2.0, -400.0 * x[0],
        -400.0 * x[0], 200.0;
    return B;
  };
  p.standard_start = (Vector(2) << -2.0, 1.0).finished();
  p.known_solution = KnownSolution{(Vector(2) << 1.0, 1.0).finished(), 0.0};
  return p;
}

ProblemSpec hs3() {
  ProblemSpec p;
  p.name = "hs3";
  p.description = "Nearly flat quadratic with the bound x2 >= 0.";
  p.n = 2;
  p.m = 0;
  p.num_ineq = 1;
  p.eval_f = [](const Vector& x) {
    const double d = x[1] - x[0];
    return x[1] + 1e-5 * d * d;
  };
  p.eval_grad_f = [](const Vector& x) {
    const double d = x[1] - x[0];
    Vector g(2);
    g << -2e-5 * d, 1.0 + 2e-5 * d;
    return g;
  };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return no_eq_jac(2); };
  p.eval_g = [](const Vector& x) { return Vector(Vector::Constant(1, x[1])); };
  p.eval_jac_g = [](const Vector&) {
    Matrix J(2, 1);
    J << 0.0, 1.0;
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B(2, 2);
    B << 2e-5, -2e-5, -2e-5, 2e-5;
    return B;
  };
  p.standard_start = (Vector(2) << 10.0, 1.0).finished();
  p.known_solution = KnownSolution{Vector::Zero(2), 0.0};
  return p;
}

ProblemSpec hs4() {
  ProblemSpec p;
  p.name = "hs4";
  p.description = "Cubic objective with bounds x1 >= 1, x2 >= 0 (both active).";
  p.n = 2;
  p.m = 0;
  p.num_ineq = 2;
  p.eval_f = [](const Vector& x) {
    const double t = x[0] + 1.0;
    return t * t * t / 3.0 + x[1];
  };
  p.eval_grad_f = [](const Vector& x) {
    const double t = x[0] + 1.0;
    Vector g(2);
    g << t * t, 1.0;
    return g;
  };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return no_eq_jac(2); };
  p.eval_g = [](const Vector& x) {
    Vector g(2);
    g << x[0] - 1.0, x[1];
    return g;
  };
  p.eval_jac_g = [](const Vector&) {
    return Matrix(Matrix::Identity(2, 2));
  };
  p.eval_hess_lagrangian = [](const Vector& x, const Vector&, const Vector&) {
    Matrix B = Matrix::Zero(2, 2);
    B(0, 0) = 2.0 * (x[0] + 1.0);
    return B;
  };
  p.standard_start = (Vector(2) << 1.125, 0.125).finished();
  p.known_solution =
      KnownSolution{(Vector(2) << 1.0, 0.0).finished(), 8.0 / 3.0};
  return p;
}

ProblemSpec hs8() {
  ProblemSpec p;
  p.name = "hs8";
  p.description =
      "Feasibility problem: f = -1 on x1^2 + x2^2 = 25, x1 x2 = 9.";
  p.n = 2;
  p.m = 2;
  p.num_ineq = 0;
  p.eval_f = [](const Vector&) { return -1.0; };
  p.eval_grad_f = [](const Vector&) { return Vector(Vector::Zero(2)); };
  p.eval_h = [](const Vector& x) {
    Vector h(2);
    h << x[0] * x[0] + x[1] * x[1] - 25.0, x[0] * x[1] - 9.0;
    return h;
  };
  p.eval_jac_h = [](const Vector& x) {
    Matrix J(2, 2);
    J << 2.0 * x[0], x[1], 2.0 * x[1], x[0];
    return J;
  };
  p.eval_g = [](const Vector&) { return Vector(0); };
  p.eval_jac_g = [](const Vector&) { return Matrix(2, 0); };
  p.eval_hess_lagrangian = [](const Vector&, const Vector& lambda,
                              const Vector&) {
    Matrix B(2, 2);
    B << -2.0 * lambda[0], -lambda[1], -lambda[1], -2.0 * lambda[0];
    return B;
  };
  p.standard_start = (Vector(2) << 2.0, 1.0).finished();
  const double a = std::sqrt((25.0 + std::sqrt(301.0)) / 2.0);
  p.known_solution =
      KnownSolution{(Vector(2) << a, 9.0 / a).finished(), -1.0};
  return p;
}

ProblemSpec hs14() {
  ProblemSpec p;
  p.name = "hs14";
  p.description =
      "General constraints: quadratic objective, one linear equality, one "
      "active ellipse inequality.";
  p.n = 2;
  p.m = 1;
  p.num_ineq = 1;
  p.eval_f = [](const Vector& x) {
    const double a = x[0] - 2.0;
    const double b = x[1] - 1.0;
    return a * a + b * b;
  };
  p.eval_grad_f = [](const Vector& x) {
    Vector g(2);
    g << 2.0 * (x[0] - 2.0), 2.0 * (x[1] - 1.0);
    return g;
  };
  p.eval_h = [](const Vector& x) {
    return Vector(Vector::Constant(1, x[0] - 2.0 * x[1] + 1.0));
  };
  p.eval_jac_h = [](const Vector&) {
    Matrix J(2, 1);
    J << 1.0, -2.0;
    return J;
  };
  p.eval_g = [](const Vector& x) {
    return Vector(Vector::Constant(
        1, -0.25 * x[0] * x[0] - x[1] * x[1] + 1.0));
  };
  p.eval_jac_g = [](const Vector& x) {
    Matrix J(2, 1);
    J << -0.5 * x[0], -2.0 * x[1];
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector& s) {
    Matrix B(2, 2);
    B << 2.0 + 0.5 * s[0], 0.0, 0.0, 2.0 + 2.0 * s[0];
    return B;
  };
  p.standard_start = (Vector(2) << 2.0, 2.0).finished();
  const double r7 = std::sqrt(7.0);
  p.known_solution = KnownSolution{
      (Vector(2) << 0.5 * (r7 - 1.0), 0.25 * (r7 + 1.0)).finished(),
      9.0 - 2.875 * r7};
  return p;
}

ProblemSpec hs21() {
  ProblemSpec p;
  p.name = "hs21";
  p.description =
      "Linear inequality 10 x1 - x2 >= 10 plus the box [2,50] x [-50,50]. "
      "Published start (-1,-1) violates x1 >= 2; moved inside to x1 = 2.02 "
      "(1e-2 * max(1,|bound|) off the bound).";
  p.n = 2;
  p.m = 0;
  p.num_ineq = 5;
  p.eval_f = [](const Vector& x) {
    return 0.01 * x[0] * x[0] + x[1] * x[1] - 100.0;
  };
  p.eval_grad_f = [](const Vector& x) {
    Vector g(2);
    g << 0.02 * x[0], 2.0 * x[1];
    return g;
  };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return no_eq_jac(2); };
  p.eval_g = [](const Vector& x) {
    Vector g(5);
    g << 10.0 * x[0] - x[1] - 10.0, x[0] - 2.0, 50.0 - x[0], x[1] + 50.0,
        50.0 - x[1];
    return g;
  };
  p.eval_jac_g = [](const Vector&) {
    Matrix J(2, 5);
    J << 10.0, 1.0, -1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 1.0, -1.0;
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B = Matrix::Zero(2, 2);
    B(0, 0) = 0.02;
    B(1, 1) = 2.0;
    return B;
  };
  p.standard_start = (Vector(2) << 2.02, -1.0).finished();
  p.known_solution =
      KnownSolution{(Vector(2) << 2.0, 0.0).finished(), -99.96};
  return p;
}

ProblemSpec hs28() {
  ProblemSpec p;
  p.name = "hs28";
  p.description = "Convex QP with one linear equality.";
  p.n = 3;
  p.m = 1;
  p.num_ineq = 0;
  p.eval_f = [](const Vector& x) {
    const double a = x[0] + x[1];
    const double b = x[1] + x[2];
    return a * a + b * b;
  };
  p.eval_grad_f = [](const Vector& x) {
    const double a = x[0] + x[1];
    const double b = x[1] + x[2];
    Vector g(3);
    g << 2.0 * a, 2.0 * a + 2.0 * b, 2.0 * b;
    return g;
  };
  p.eval_h = [](const Vector& x) {
    return Vector(
        Vector::Constant(1, x[0] + 2.0 * x[1] + 3.0 * x[2] - 1.0));
  };
  p.eval_jac_h = [](const Vector&) {
    Matrix J(3, 1);
    J << 1.0, 2.0, 3.0;
    return J;
  };
  p.eval_g = [](const Vector&) { return Vector(0); };
  p.eval_jac_g = [](const Vector&) { return Matrix(3, 0); };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B(3, 3);
    B << 2.0, 2.0, 0.0, 2.0, 4.0, 2.0, 0.0, 2.0, 2.0;
    return B;
  };
  p.standard_start = (Vector(3) << -4.0, 1.0, 1.0).finished();
  p.known_solution =
      KnownSolution{(Vector(3) << 0.5, -0.5, 0.5).finished(), 0.0};
  return p;
}

ProblemSpec hs35() {
  ProblemSpec p;
  p.name = "hs35";
  p.description =
      "Beale's convex QP: one linear inequality plus nonnegativity bounds.";
  p.n = 3;
  p.m = 0;
  p.num_ineq = 4;
  p.eval_f = [](const Vector& x) {
    return 9.0 - 8.0 * x[0] - 6.0 * x[1] - 4.0 * x[2] + 2.0 * x[0] * x[0] +
           2.0 * x[1] * x[1] + x[2] * x[2] + 2.0 * x[0] * x[1] +
           2.0 * x[0] * x[2];
  };
  p.eval_grad_f = [](const Vector& x) {
    Vector g(3);
    g << -8.0 + 4.0 * x[0] + 2.0 * x[1] + 2.0 * x[2],
        -6.0 + 4.0 * x[1] + 2.0 * x[0], -4.0 + 2.0 * x[2] + 2.0 * x[0];
    return g;
  };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return no_eq_jac(3); };
  p.eval_g = [](const Vector& x) {
    Vector g(4);
    g << 3.0 - x[0] - x[1] - 2.0 * x[2], x[0], x[1], x[2];
    return g;
  };
  p.eval_jac_g = [](const Vector&) {
    Matrix J(3, 4);
    J << -1.0, 1.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0, -2.0, 0.0, 0.0, 1.0;
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B(3, 3);
    B << 4.0, 2.0, 2.0, 2.0, 4.0, 0.0, 2.0, 0.0, 2.0;
    return B;
  };
  p.standard_start = Vector::Constant(3, 0.5);
  p.known_solution = KnownSolution{
      (Vector(3) << 4.0 / 3.0, 7.0 / 9.0, 4.0 / 9.0).finished(), 1.0 / 9.0};
  return p;
}

ProblemSpec hs48() {
  ProblemSpec p;
  p.name = "hs48";
  p.description = "Convex QP in five variables with two linear equalities.";
  p.n = 5;
  p.m = 2;
  p.num_ineq = 0;
  p.eval_f = [](const Vector& x) {
    const double a = x[0] - 1.0;
    const double b = x[1] - x[2];
    const double c = x[3] - x[4];
    return a * a + b * b + c * c;
  };
  p.eval_grad_f = [](const Vector& x) {
    const double b = x[1] - x[2];
    const double c = x[3] - x[4];
    Vector g(5);
    g << 2.0 * (x[0] - 1.0), 2.0 * b, -2.0 * b, 2.0 * c, -2.0 * c;
    return g;
  };
  p.eval_h = [](const Vector& x) {
    Vector h(2);
    h << x.sum() - 5.0, x[2] - 2.0 * (x[3] + x[4]) + 3.0;
    return h;
  };
  p.eval_jac_h = [](const Vector&) {
    Matrix J(5, 2);
    J << 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, -2.0, 1.0, -2.0;
    return J;
  };
  p.eval_g = [](const Vector&) { return Vector(0); };
  p.eval_jac_g = [](const Vector&) { return Matrix(5, 0); };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B = Matrix::Zero(5, 5);
    B(0, 0) = 2.0;
    B(1, 1) = B(2, 2) = B(3, 3) = B(4, 4) = 2.0;
    B(1, 2) = B(2, 1) = -2.0;
    B(3, 4) = B(4, 3) = -2.0;
    return B;
  };
  p.standard_start = (Vector(5) << 3.0, 5.0, -3.0, 2.0, -2.0).finished();
  p.known_solution = KnownSolution{Vector::Ones(5), 0.0};
  return p;
}

ProblemSpec hs51() {
  ProblemSpec p;
  p.name = "hs51";
  p.description = "Convex QP in five variables with three linear equalities.";
  p.n = 5;
  p.m = 3;
  p.num_ineq = 0;
  p.eval_f = [](const Vector& x) {
    const double a = x[0] - x[1];
    const double b = x[1] + x[2] - 2.0;
    const double c = x[3] - 1.0;
    const double d = x[4] - 1.0;
    return a * a + b * b + c * c + d * d;
  };
  p.eval_grad_f = [](const Vector& x) {
    const double a = x[0] - x[1];
    const double b = x[1] + x[2] - 2.0;
    Vector g(5);
    g << 2.0 * a, -2.0 * a + 2.0 * b, 2.0 * b, 2.0 * (x[3] - 1.0),
        2.0 * (x[4] - 1.0);
    return g;
  };
  p.eval_h = [](const Vector& x) {
    Vector h(3);
    h << x[0] + 3.0 * x[1] - 4.0, x[2] + x[3] - 2.0 * x[4], x[1] - x[4];
    return h;
  };
  p.eval_jac_h = [](const Vector&) {
    Matrix J(5, 3);
    J << 1.0, 0.0, 0.0, 3.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        -2.0, -1.0;
    return J;
  };
  p.eval_g = [](const Vector&) { return Vector(0); };
  p.eval_jac_g = [](const Vector&) { return Matrix(5, 0); };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B = Matrix::Zero(5, 5);
    B(0, 0) = 2.0;
    B(0, 1) = B(1, 0) = -2.0;
    B(1, 1) = 4.0;
    B(1, 2) = B(2, 1) = 2.0;
    B(2, 2) = 2.0;
    B(3, 3) = 2.0;
    B(4, 4) = 2.0;
    return B;
  };
  p.standard_start = (Vector(5) << 2.5, 0.5, 2.0, -1.0, 0.5).finished();
  p.known_solution = KnownSolution{Vector::Ones(5), 0.0};
  return p;
}

ProblemSpec hs52() {
  ProblemSpec p;
  p.name = "hs52";
  p.description = "Convex QP in five variables with three linear equalities.";
  p.n = 5;
  p.m = 3;
  p.num_ineq = 0;
  p.eval_f = [](const Vector& x) {
    const double a = 4.0 * x[0] - x[1];
    const double b = x[1] + x[2] - 2.0;
    const double c = x[3] - 1.0;
    const double d = x[4] - 1.0;
    return a * a + b * b + c * c + d * d;
  };
  p.eval_grad_f = [](const Vector& x) {
    const double a = 4.0 * x[0] - x[1];
    const double b = x[1] + x[2] - 2.0;
    Vector g(5);
    g << 8.0 * a, -2.0 * a + 2.0 * b, 2.0 * b, 2.0 * (x[3] - 1.0),
        2.0 * (x[4] - 1.0);
    return g;
  };
  p.eval_h = [](const Vector& x) {
    Vector h(3);
    h << x[0] + 3.0 * x[1], x[2] + x[3] - 2.0 * x[4], x[1] - x[4];
    return h;
  };
  p.eval_jac_h = [](const Vector&) {
    Matrix J(5, 3);
    J << 1.0, 0.0, 0.0, 3.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        -2.0, -1.0;
    return J;
  };
  p.eval_g = [](const Vector&) { return Vector(0); };
  p.eval_jac_g = [](const Vector&) { return Matrix(5, 0); };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B = Matrix::Zero(5, 5);
    B(0, 0) = 32.0;
    B(0, 1) = B(1, 0) = -8.0;
    B(1, 1) = 4.0;
    B(1, 2) = B(2, 1) = 2.0;
    B(2, 2) = 2.0;
    B(3, 3) = 2.0;
    B(4, 4) = 2.0;
    return B;
  };
  p.standard_start = Vector::Constant(5, 2.0);
  p.known_solution = KnownSolution{
      (Vector(5) << -33.0 / 349.0, 11.0 / 349.0, 180.0 / 349.0,
       -158.0 / 349.0, 11.0 / 349.0)
          .finished(),
      1859.0 / 349.0};
  return p;
}

ProblemSpec hs76() {
  ProblemSpec p;
  p.name = "hs76";
  p.description =
      "Convex QP with three general linear inequalities and nonnegativity "
      "bounds.";
  p.n = 4;
  p.m = 0;
  p.num_ineq = 7;
  p.eval_f = [](const Vector& x) {
    return x[0] * x[0] + 0.5 * x[1] * x[1] + x[2] * x[2] +
           0.5 * x[3] * x[3] - x[0] * x[2] + x[2] * x[3] - x[0] -
           3.0 * x[1] + x[2] - x[3];
  };
  p.eval_grad_f = [](const Vector& x) {
    Vector g(4);
    g << 2.0 * x[0] - x[2] - 1.0, x[1] - 3.0,
        2.0 * x[2] - x[0] + x[3] + 1.0, x[3] + x[2] - 1.0;
    return g;
  };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return no_eq_jac(4); };
  p.eval_g = [](const Vector& x) {
    Vector g(7);
    g << 5.0 - x[0] - 2.0 * x[1] - x[2] - x[3],
        4.0 - 3.0 * x[0] - x[1] - 2.0 * x[2] + x[3],
        x[1] + 4.0 * x[2] - 1.5, x[0], x[1], x[2], x[3];
    return g;
  };
  p.eval_jac_g = [](const Vector&) {
    Matrix J(4, 7);
    J << -1.0, -3.0, 0.0, 1.0, 0.0, 0.0, 0.0,
        -2.0, -1.0, 1.0, 0.0, 1.0, 0.0, 0.0,
        -1.0, -2.0, 4.0, 0.0, 0.0, 1.0, 0.0,
        -1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0;
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector&) {
    Matrix B(4, 4);
    B << 2.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 2.0, 1.0, 0.0,
        0.0, 1.0, 1.0;
    return B;
  };
  p.standard_start = Vector::Constant(4, 0.5);
  p.known_solution = KnownSolution{
      (Vector(4) << 3.0 / 11.0, 23.0 / 11.0, 0.0, 6.0 / 11.0).finished(),
      -1133.0 / 242.0};
  return p;
}

using Factory = ProblemSpec (*)();

const std::map<std::string, Factory>& factories() {
  static const std::map<std::string, Factory> table = {
      {"wb", &wb_problem}, {"hs1", &hs1},   {"hs3", &hs3},   {"hs4", &hs4},
      {"hs8", &hs8},       {"hs14", &hs14}, {"hs21", &hs21}, {"hs28", &hs28},
      {"hs35", &hs35},     {"hs48", &hs48}, {"hs51", &hs51}, {"hs52", &hs52},
      {"hs76", &hs76},
  };
  return table;
}

}  // namespace

ProblemSpec registry(const std::string& name) {
  const auto& table = factories();
  auto it = table.find(name);
  if (it != table.end()) {
    return it->second();
  }
  // Seeded LP family: lp_rand<k> is the k-th member (k >= 1).
  if (name.rfind("lp_rand", 0) == 0) {
    try {
      const int k = std::stoi(name.substr(7));
      if (k >= 1) {
        std::mt19937 dims(static_cast<unsigned>(k));
        const Index n = 5 + static_cast<Index>(dims() % 46);   // 5..50
        const Index m = 1 + static_cast<Index>(dims() % 20);   // 1..20
        ProblemSpec p =
            lp_problem(random_lp(n, std::min(m, n), 1000u + k));
        p.name = name;
        p.description = "Seeded random standard-form LP (bounded optimum).";
        return p;
      }
    } catch (const std::invalid_argument&) {
      // fall through to the unknown-name error
    }
  }
  std::ostringstream msg;
  msg << "unknown problem '" << name << "'; available:";
  for (const auto& [key, unused] : table) {
    msg << ' ' << key;
  }
  msg << " lp_rand<k>";
  throw std::invalid_argument(msg.str());
}

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  for (const auto& [key, unused] : factories()) {
    names.push_back(key);
  }
  return names;
}

}  // namespace ipr
