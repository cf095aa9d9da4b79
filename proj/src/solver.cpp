#include "ipr/solver.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace ipr {

void SolverConfig::validate() const {
  if (!(mu0 > 0)) throw std::invalid_argument("mu0 must be positive");
  if (!(rho0 > 0)) throw std::invalid_argument("rho0 must be positive");
  if (!(eta > 1)) throw std::invalid_argument("eta must exceed 1");
  if (!(gamma0 > 0 && gamma0 < 1))
    throw std::invalid_argument("gamma0 must lie in (0, 1)");
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(tau > 0 && tau < 1))
    throw std::invalid_argument("tau must lie in (0, 1)");
  if (!(sigma > 0 && sigma < 1))
    throw std::invalid_argument("sigma must lie in (0, 1)");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (min_step_power < 1)
    throw std::invalid_argument("min_step_power must be >= 1");
  if (guard_max_loops < 1)
    throw std::invalid_argument("guard_max_loops must be >= 1");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kkt_solved: return "kkt_solved";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::small_step: return "small_step";
    case SolveStatus::degenerate_kkt: return "degenerate_kkt";
    case SolveStatus::guard_converged: return "guard_converged";
  }
  return "unknown";
}

GuardResult barrier_guard(
    const std::function<std::pair<RelaxationPair, double>(double)>& phi_eval,
    double mu, const SolverConfig& cfg) {
  GuardResult res;
  auto [pair, phi] = phi_eval(mu);
  res.pair = std::move(pair);
  res.phi = phi;
  res.mu = mu;
  while (res.mu > std::max(cfg.eta * res.phi, cfg.eps)) {
    if (res.loops >= cfg.guard_max_loops) {
      res.capped = true;
      break;
    }
    res.mu /= cfg.eta;
    std::tie(res.pair, res.phi) = phi_eval(res.mu);
    ++res.loops;
  }
  return res;
}

double select_gamma(const SolverConfig& cfg, double mu, double phi) {
  if (!(phi > 0)) {
    throw std::invalid_argument("select_gamma: phi must be positive");
  }
  return std::min(cfg.gamma0, mu / phi);
}

double update_rho(double rho, const Vector& x, const Vector& s,
                  const SolverConfig& cfg) {
  if (!(rho > 0)) {
    throw std::invalid_argument("update_rho: rho must be positive");
  }
  const double s_inf = s.size() > 0 ? s.lpNorm<Eigen::Infinity>() : 0.0;
  return std::max(rho, cfg.sigma * s_inf / std::max(x.norm(), 1.0));
}

namespace {

// Everything the merit and KKT error need at one point. Cached so guard
// re-evaluations and trace rows never re-invoke problem callbacks.
struct PointEval {
  Vector x;
  Vector grad_f;
  Vector h;
  Matrix jac_h;
  Vector g;
  Matrix jac_g;
  double f = 0.0;
  bool has_f = false;
};

using PointEvaluator = std::function<PointEval(const Vector&)>;

PointEvaluator plain_evaluator(const ProblemSpec& problem) {
  return [&problem](const Vector& x) {
    PointEval pe;
    pe.x = x;
    pe.grad_f = problem.eval_grad_f(x);
    pe.h = problem.eval_h(x);
    pe.jac_h = problem.eval_jac_h(x);
    pe.g = problem.eval_g(x);
    pe.jac_g = problem.eval_jac_g(x);
    return pe;
  };
}

struct AcceptedTrial {
  double alpha = 1.0;
  double mu = 0.0;
  PointEval pe;
  Vector lambda;
  Vector s;
  RelaxationPair pair;
  ResidualBundle bundle;
};

// Backtracking on the merit with rho held fixed. Returns the accepted trial
// or throws SmallStepError when the grid is exhausted.
AcceptedTrial backtrack(const PointEvaluator& eval_point, const Vector& x,
                        const Vector& lambda, const Vector& s, double mu,
                        double rho, double phi, double delta_mu_value,
                        const Direction& d, const SolverConfig& cfg) {
  double alpha = 1.0;
  for (int i = 0; i <= cfg.min_step_power; ++i) {
    AcceptedTrial trial;
    trial.alpha = alpha;
    trial.mu = mu + alpha * delta_mu_value;
    trial.lambda = lambda + alpha * d.d_lambda;
    trial.s = s + alpha * d.d_s;
    trial.pe = eval_point(x + alpha * d.d_x);
    trial.pair = eval_pair(trial.pe.g, trial.s, trial.mu, rho);
    trial.bundle =
        kkt_residuals(trial.pe.grad_f, trial.pe.jac_h, trial.pe.jac_g,
                      trial.pe.h, trial.pe.g, trial.lambda, trial.s,
                      trial.pair);
    if (trial.bundle.phi <= (1.0 - 2.0 * cfg.tau * alpha) * phi) {
      return trial;
    }
    alpha *= cfg.delta;
  }
  throw SmallStepError(
      "line_search: no step size down to delta^" +
      std::to_string(cfg.min_step_power) + " satisfies the decrease rule");
}

double violation_inf(const PointEval& pe) {
  double v = 0.0;
  if (pe.g.size() > 0) {
    v = (-pe.g).cwiseMax(0.0).lpNorm<Eigen::Infinity>();
  }
  if (pe.h.size() > 0) {
    v = std::max(v, pe.h.lpNorm<Eigen::Infinity>());
  }
  return v;
}

}  // namespace

double line_search(const ProblemSpec& problem, const Iterate& iter,
                   double delta_mu_value, const Direction& d,
                   const SolverConfig& cfg) {
  if (!(iter.residuals.phi > 0)) {
    throw std::invalid_argument("line_search: phi must be positive");
  }
  return backtrack(plain_evaluator(problem), iter.x, iter.lambda, iter.s,
                   iter.mu, iter.rho, iter.residuals.phi, delta_mu_value, d,
                   cfg)
      .alpha;
}

Iterate make_iterate(const ProblemSpec& problem, const Vector& x,
                     const Vector& lambda, const Vector& s, double mu,
                     double rho) {
  if (x.size() != problem.n || lambda.size() != problem.m ||
      s.size() != problem.num_ineq) {
    throw std::invalid_argument("make_iterate: dimension mismatch");
  }
  Iterate iter;
  iter.x = x;
  iter.lambda = lambda;
  iter.s = s;
  iter.mu = mu;
  iter.rho = rho;
  iter.gamma = 1.0;
  iter.pair = eval_pair(problem.eval_g(x), s, mu, rho);
  iter.residuals = kkt_residuals(problem, x, lambda, s, iter.pair);
  iter.error = error_E(problem, x, lambda, s);
  auto [hess, shift] =
      regularize_hessian(problem.eval_hess_lagrangian(x, lambda, s));
  iter.hessian = std::move(hess);
  iter.shift = shift;
  iter.k = 0;
  return iter;
}

SolveReport solve(const ProblemSpec& problem, const Vector& x0,
                  const Vector& lambda0, const Vector& s0,
                  const SolverConfig& cfg, const SolveOptions& options) {
  cfg.validate();
  const auto start_time = std::chrono::steady_clock::now();

  Vector x = x0.size() > 0 ? x0 : problem.standard_start;
  if (x.size() != problem.n) {
    throw std::invalid_argument("solve: x0 has the wrong dimension");
  }
  Vector s = s0.size() > 0 ? s0 : Vector::Ones(problem.num_ineq);
  if (s.size() != problem.num_ineq) {
    throw std::invalid_argument("solve: s0 has the wrong dimension");
  }

  SolveReport report;
  Counters& counters = report.counters;

  PointEvaluator eval_point = [&problem, &counters](const Vector& at) {
    PointEval pe;
    pe.x = at;
    pe.grad_f = problem.eval_grad_f(at);
    ++counters.grad_evals;
    pe.h = problem.eval_h(at);
    pe.jac_h = problem.eval_jac_h(at);
    pe.g = problem.eval_g(at);
    pe.jac_g = problem.eval_jac_g(at);
    return pe;
  };
  auto ensure_f = [&problem, &counters](PointEval& pe) {
    if (!pe.has_f) {
      pe.f = problem.eval_f(pe.x);
      pe.has_f = true;
      ++counters.f_evals;
    }
  };

  PointEval pe = eval_point(x);

  Vector lambda;
  if (lambda0.size() > 0) {
    lambda = lambda0;
  } else if (problem.m > 0) {
    // Least-squares multipliers minimize the initial dual residual; zeros
    // when jac_h is rank deficient.
    Vector rhs = pe.grad_f;
    if (problem.num_ineq > 0) {
      rhs -= pe.jac_g * s;
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(pe.jac_h);
    lambda = qr.rank() == problem.m ? Vector(qr.solve(rhs))
                                    : Vector(Vector::Zero(problem.m));
  } else {
    lambda = Vector(0);
  }
  if (lambda.size() != problem.m) {
    throw std::invalid_argument("solve: lambda0 has the wrong dimension");
  }

  double mu = cfg.mu0;
  double rho = cfg.rho0;
  RelaxationPair pair;
  ResidualBundle bundle;

  auto guard_phi_eval = [&](double trial_mu) {
    RelaxationPair p = eval_pair(pe.g, s, trial_mu, rho);
    ResidualBundle b = kkt_residuals(pe.grad_f, pe.jac_h, pe.jac_g, pe.h,
                                     pe.g, lambda, s, p);
    return std::make_pair(std::move(p), b.phi);
  };

  // Applies a guard result; true means terminate with guard_converged.
  auto apply_guard = [&](GuardResult&& res) {
    mu = res.mu;
    pair = std::move(res.pair);
    bundle = kkt_residuals(pe.grad_f, pe.jac_h, pe.jac_g, pe.h, pe.g, lambda,
                           s, pair);
    if (res.capped) {
      if (bundle.phi <= cfg.eps) {
        return true;
      }
      throw GuardStallError(
          "solve: barrier guard hit its loop cap with phi above tolerance");
    }
    return false;
  };

  bool guard_stop = apply_guard(barrier_guard(guard_phi_eval, mu, cfg));
  double gamma =
      bundle.phi > 0 ? select_gamma(cfg, mu, bundle.phi) : cfg.gamma0;
  KktError err = error_E(pe.grad_f, pe.jac_h, pe.jac_g, pe.h, pe.g, lambda, s);

  SolveStatus status = SolveStatus::max_iters;
  int k = 0;
  while (true) {
    ensure_f(pe);
    report.trace.push_back(TraceRow{k, mu, x, s, pe.f, violation_inf(pe),
                                    bundle.phi, err.value});
    if (guard_stop) {
      status = SolveStatus::guard_converged;
      break;
    }
    if (mu <= cfg.eps && bundle.phi <= cfg.eps && err.value <= cfg.eps) {
      status = SolveStatus::kkt_solved;
      break;
    }
    if (k >= cfg.max_iters) {
      status = SolveStatus::max_iters;
      break;
    }

    // gamma phi <= mu holds after gamma selection; rounding of the product
    // can leave a few ulps of positive dust that must not enter the update.
    const double dmu = std::min(0.0, delta_mu(mu, gamma, bundle.phi));

    StepRecord record;
    if (options.observer) {
      record.k = k;
      record.mu = mu;
      record.rho = rho;
      record.gamma = gamma;
      record.phi = bundle.phi;
      record.x = x;
      record.lambda = lambda;
      record.s = s;
      record.delta_mu = dmu;
      record.min_z_over_mu =
          pair.z.size() > 0 ? pair.z.minCoeff() / mu : 0.0;
    }

    Direction d;
    try {
      Iterate iter;
      iter.x = x;
      iter.lambda = lambda;
      iter.s = s;
      iter.mu = mu;
      iter.rho = rho;
      iter.gamma = gamma;
      iter.pair = pair;
      iter.residuals = bundle;
      iter.error = err;
      iter.k = k;
      if (options.lp_reduced && problem.is_lp && problem.lp) {
        d = lp_reduced_direction(problem.lp->A, problem.lp->b, problem.lp->c,
                                 iter, dmu);
      } else {
        auto [hess, shift] = regularize_hessian(
            problem.eval_hess_lagrangian(x, lambda, s));
        iter.hessian = std::move(hess);
        iter.shift = shift;
        d = solve_direction(assemble_system(problem, iter, dmu));
      }
    } catch (const DegenerateSystemError&) {
      status = SolveStatus::degenerate_kkt;
      break;
    }

    AcceptedTrial trial;
    try {
      trial = backtrack(eval_point, x, lambda, s, mu, rho, bundle.phi, dmu, d,
                        cfg);
    } catch (const SmallStepError&) {
      status = SolveStatus::small_step;
      break;
    }

    if (options.observer) {
      record.d_x = d.d_x;
      record.d_lambda = d.d_lambda;
      record.d_s = d.d_s;
      record.alpha = trial.alpha;
      record.phi_trial = trial.bundle.phi;
      record.mu_after_step = trial.mu;
    }

    x = trial.pe.x;
    lambda = std::move(trial.lambda);
    s = std::move(trial.s);
    mu = trial.mu;
    pe = std::move(trial.pe);

    const double rho_next = update_rho(rho, x, s, cfg);
    if (rho_next != rho) {
      rho = rho_next;
      pair = eval_pair(pe.g, s, mu, rho);
      bundle = kkt_residuals(pe.grad_f, pe.jac_h, pe.jac_g, pe.h, pe.g,
                             lambda, s, pair);
    } else {
      pair = std::move(trial.pair);
      bundle = std::move(trial.bundle);
    }

    if (options.observer) {
      record.rho_after = rho;
    }

    guard_stop = apply_guard(barrier_guard(guard_phi_eval, mu, cfg));
    gamma = bundle.phi > 0 ? select_gamma(cfg, mu, bundle.phi) : cfg.gamma0;
    err = error_E(pe.grad_f, pe.jac_h, pe.jac_g, pe.h, pe.g, lambda, s);

    if (options.observer) {
      record.mu_after_guard = mu;
      record.phi_after_guard = bundle.phi;
      options.observer(record);
    }

    ++k;
    counters.iterations = k;
  }

  report.status = status;
  report.x = x;
  report.lambda = lambda;
  report.s = s;
  report.error = err;
  counters.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    start_time)
          .count();
  return report;
}

}  // namespace ipr
