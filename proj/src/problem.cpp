#include "ipr/problem.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace ipr {

ProblemSpec wb_problem() {
  ProblemSpec p;
  p.name = "wb";
  p.description =
      "min x s.t. x^2 - 1 >= 0, x - 2 >= 0; standard start -4, minimizer 2. "
      "Many line-search interior-point methods jam on this problem.";
  p.n = 1;
  p.m = 0;
  p.num_ineq = 2;
  p.eval_f = [](const Vector& x) { return x[0]; };
  p.eval_grad_f = [](const Vector&) { return Vector::Ones(1); };
  p.eval_h = [](const Vector&) { return Vector(0); };
  p.eval_jac_h = [](const Vector&) { return Matrix(1, 0); };
  p.eval_g = [](const Vector& x) {
    Vector g(2);
    g << x[0] * x[0] - 1.0, x[0] - 2.0;
    return g;
  };
  p.eval_jac_g = [](const Vector& x) {
    Matrix J(1, 2);
    J << 2.0 * x[0], 1.0;
    return J;
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const Vector& s) {
    Matrix B(1, 1);
    B(0, 0) = -2.0 * s[0];
    return B;
  };
  p.standard_start = Vector::Constant(1, -4.0);
  p.known_solution = KnownSolution{Vector::Constant(1, 2.0), 2.0};
  return p;
}

ProblemSpec lp_problem(LpData data) {
  const Index m = data.A.rows();
  const Index n = data.A.cols();
  if (data.b.size() != m || data.c.size() != n) {
    throw std::invalid_argument("lp_problem: inconsistent dimensions");
  }
  if (n == 0) {
    throw std::invalid_argument("lp_problem: empty problem");
  }
  if (m > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(data.A.transpose());
    if (qr.rank() < m) {
      throw std::invalid_argument("lp_problem: A is rank deficient");
    }
  }

  auto shared = std::make_shared<LpData>(std::move(data));
  ProblemSpec p;
  p.name = "lp";
  p.n = n;
  p.m = m;
  p.num_ineq = n;  // g(x) = x
  p.eval_f = [shared](const Vector& x) { return shared->c.dot(x); };
  p.eval_grad_f = [shared](const Vector&) { return shared->c; };
  p.eval_h = [shared](const Vector& x) {
    return Vector(shared->A * x - shared->b);
  };
  p.eval_jac_h = [shared](const Vector&) {
    return Matrix(shared->A.transpose());
  };
  p.eval_g = [](const Vector& x) { return x; };
  p.eval_jac_g = [n](const Vector&) { return Matrix(Matrix::Identity(n, n)); };
  p.eval_hess_lagrangian = [n](const Vector&, const Vector&, const Vector&) {
    return Matrix(Matrix::Zero(n, n));
  };
  p.standard_start = Vector::Ones(n);
  p.is_lp = true;
  p.lp = *shared;
  return p;
}

namespace {

// Pulls the next non-comment token; reports the named field on failure.
std::string next_token(std::istream& in, const std::string& path, int& line,
                       const std::string& field) {
  std::string tok;
  while (true) {
    int c = in.peek();
    if (c == EOF) {
      throw ParseError(path, line, "missing value for field '" + field + "'");
    }
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      ++line;
      continue;
    }
    if (c == '\n') {
      in.get();
      ++line;
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    in >> tok;
    return tok;
  }
}

double parse_number(const std::string& tok, const std::string& path, int line,
                    const std::string& field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) {
      throw std::invalid_argument(tok);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line,
                     "bad number '" + tok + "' in field '" + field + "'");
  }
}

}  // namespace

LpData lp_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  int line = 1;
  const long n =
      std::lround(parse_number(next_token(in, path, line, "n"), path, line, "n"));
  const long m =
      std::lround(parse_number(next_token(in, path, line, "m"), path, line, "m"));
  if (n <= 0 || m < 0) {
    throw ParseError(path, line, "n must be positive and m nonnegative");
  }
  LpData data;
  data.c.resize(n);
  data.b.resize(m);
  data.A.resize(m, n);
  for (long j = 0; j < n; ++j) {
    data.c[j] =
        parse_number(next_token(in, path, line, "c"), path, line, "c");
  }
  for (long i = 0; i < m; ++i) {
    data.b[i] =
        parse_number(next_token(in, path, line, "b"), path, line, "b");
  }
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) {
      data.A(i, j) =
          parse_number(next_token(in, path, line, "A"), path, line, "A");
    }
  }
  return data;
}

LpData random_lp(Index n, Index m, unsigned seed) {
  if (n <= 0 || m <= 0 || m > n) {
    throw std::invalid_argument("random_lp: require 0 < m <= n");
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> interior(0.5, 2.0);
  std::uniform_real_distribution<double> dual(0.1, 1.0);

  LpData data;
  data.A.resize(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      data.A(i, j) = normal(rng);
    }
  }
  // Interior primal point and strictly dual-feasible (lambda, s) keep the
  // optimum finite and attained.
  Vector x_hat(n), s_hat(n), lambda_hat(m);
  for (Index j = 0; j < n; ++j) {
    x_hat[j] = interior(rng);
  }
  for (Index j = 0; j < n; ++j) {
    s_hat[j] = dual(rng);
  }
  for (Index i = 0; i < m; ++i) {
    lambda_hat[i] = normal(rng);
  }
  data.b = data.A * x_hat;
  data.c = data.A.transpose() * lambda_hat + s_hat;
  return data;
}

}  // namespace ipr
