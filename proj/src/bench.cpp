#include "ipr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ipr/problem.hpp"

namespace ipr {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "kkt_solved") return SolveStatus::kkt_solved;
  if (s == "max_iters") return SolveStatus::max_iters;
  if (s == "small_step") return SolveStatus::small_step;
  if (s == "degenerate_kkt") return SolveStatus::degenerate_kkt;
  if (s == "guard_converged") return SolveStatus::guard_converged;
  throw std::invalid_argument("unknown solve status '" + s + "'");
}

int suite_thread_count(int requested, std::size_t jobs) {
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) {
    threads = 1;
  }
  if (const char* cap = std::getenv("IPR_NUM_THREADS")) {
    try {
      const int limit = std::stoi(cap);
      if (limit >= 1) {
        threads = std::min(threads, limit);
      }
    } catch (const std::exception&) {
      // Unparseable values leave the default in place.
    }
  }
  return std::min<int>(threads, static_cast<int>(std::max<std::size_t>(jobs, 1)));
}

}  // namespace

ProfileMetric profile_metric_from_string(const std::string& name) {
  if (name == "iterations") return ProfileMetric::iterations;
  if (name == "f_evals") return ProfileMetric::f_evals;
  if (name == "grad_evals") return ProfileMetric::grad_evals;
  if (name == "wall_time") return ProfileMetric::wall_time;
  throw std::invalid_argument(
      "unknown profile metric '" + name +
      "'; expected iterations, f_evals, grad_evals or wall_time");
}

SuiteResult run_suite(const std::vector<std::string>& problems,
                      const SolverConfig& cfg, const std::string& label,
                      int num_threads) {
  if (problems.empty()) {
    throw std::invalid_argument("run_suite: empty problem list");
  }
  cfg.validate();
  for (const std::string& name : problems) {
    (void)registry(name);  // unknown names are usage errors, not records
  }

  SuiteResult result;
  result.label = label;
  result.records.resize(problems.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= problems.size()) {
        return;
      }
      SuiteRecord& rec = result.records[i];
      rec.problem = problems[i];
      try {
        const ProblemSpec problem = registry(problems[i]);
        const SolveReport report =
            solve(problem, Vector(), Vector(), Vector(), cfg);
        rec.status = report.status;
        rec.iterations = report.counters.iterations;
        rec.f_evals = report.counters.f_evals;
        rec.grad_evals = report.counters.grad_evals;
        rec.wall_time = report.counters.wall_time;
        rec.final_error = report.error.value;
        rec.final_f = report.trace.back().f;
      } catch (const std::exception&) {
        // Hard solver errors (guard stall) surface as non-success records.
        rec.status = SolveStatus::max_iters;
        rec.final_error = std::numeric_limits<double>::quiet_NaN();
        rec.final_f = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  const int threads = suite_thread_count(num_threads, problems.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  return result;
}

std::vector<ProfileCurve> performance_profile(
    const std::vector<SuiteResult>& results, ProfileMetric metric) {
  if (results.size() < 2) {
    throw std::invalid_argument(
        "performance_profile: need at least two result sets");
  }
  const std::size_t num_problems = results.front().records.size();
  for (const SuiteResult& r : results) {
    if (r.records.size() != num_problems) {
      throw std::invalid_argument(
          "performance_profile: mismatched problem lists");
    }
    for (std::size_t p = 0; p < num_problems; ++p) {
      if (r.records[p].problem != results.front().records[p].problem) {
        throw std::invalid_argument(
            "performance_profile: mismatched problem lists");
      }
    }
  }

  auto metric_value = [metric](const SuiteRecord& rec) -> double {
    switch (metric) {
      case ProfileMetric::iterations: return static_cast<double>(rec.iterations);
      case ProfileMetric::f_evals: return static_cast<double>(rec.f_evals);
      case ProfileMetric::grad_evals: return static_cast<double>(rec.grad_evals);
      case ProfileMetric::wall_time: return rec.wall_time;
    }
    return 0.0;
  };
  const double inf = std::numeric_limits<double>::infinity();

  // ratios[s][p] = t_{p,s} / min over successful solvers; failures get inf.
  std::vector<std::vector<double>> ratios(results.size(),
                                          std::vector<double>(num_problems));
  for (std::size_t p = 0; p < num_problems; ++p) {
    double best = inf;
    for (const SuiteResult& r : results) {
      if (r.records[p].status == SolveStatus::kkt_solved) {
        best = std::min(best, metric_value(r.records[p]));
      }
    }
    for (std::size_t s = 0; s < results.size(); ++s) {
      const SuiteRecord& rec = results[s].records[p];
      if (rec.status != SolveStatus::kkt_solved) {
        ratios[s][p] = inf;
      } else if (best == 0.0) {
        ratios[s][p] = metric_value(rec) == 0.0 ? 1.0 : inf;
      } else {
        ratios[s][p] = metric_value(rec) / best;
      }
    }
  }

  std::vector<ProfileCurve> curves;
  for (std::size_t s = 0; s < results.size(); ++s) {
    ProfileCurve curve;
    curve.label = results[s].label;
    std::vector<double> finite;
    for (double r : ratios[s]) {
      if (r < inf) {
        finite.push_back(r);
      }
    }
    std::sort(finite.begin(), finite.end());
    for (std::size_t i = 0; i < finite.size(); ++i) {
      // Step value at each distinct ratio: fraction of problems with
      // ratio <= tau.
      if (i + 1 == finite.size() || finite[i + 1] != finite[i]) {
        curve.points.emplace_back(
            finite[i], static_cast<double>(i + 1) /
                           static_cast<double>(num_problems));
      }
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

void write_trace_csv(std::ostream& out, const SolveReport& report) {
  if (report.trace.empty()) {
    return;
  }
  const Index n = report.trace.front().x.size();
  const Index mi = report.trace.front().s.size();
  out << "k,mu";
  for (Index i = 0; i < n; ++i) {
    out << ",x" << i;
  }
  for (Index j = 0; j < mi; ++j) {
    out << ",s" << j;
  }
  out << ",f,v,phi,E\n";
  for (const TraceRow& row : report.trace) {
    out << row.k << ',' << fmt17(row.mu);
    for (Index i = 0; i < n; ++i) {
      out << ',' << fmt17(row.x[i]);
    }
    for (Index j = 0; j < mi; ++j) {
      out << ',' << fmt17(row.s[j]);
    }
    out << ',' << fmt17(row.f) << ',' << fmt17(row.v) << ','
        << fmt17(row.phi) << ',' << fmt17(row.error) << '\n';
  }
}

std::vector<TraceRow> parse_trace_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("parse_trace_csv: missing header");
  }
  Index n = 0;
  Index mi = 0;
  {
    std::istringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) {
      if (col.rfind('x', 0) == 0 && col != "x") {
        ++n;
      } else if (col.rfind('s', 0) == 0) {
        ++mi;
      }
    }
  }
  std::vector<TraceRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    auto next = [&]() {
      if (!std::getline(ls, field, ',')) {
        throw std::invalid_argument("parse_trace_csv: short row");
      }
      return field;
    };
    TraceRow row;
    row.k = std::stoi(next());
    row.mu = std::stod(next());
    row.x.resize(n);
    for (Index i = 0; i < n; ++i) {
      row.x[i] = std::stod(next());
    }
    row.s.resize(mi);
    for (Index j = 0; j < mi; ++j) {
      row.s[j] = std::stod(next());
    }
    row.f = std::stod(next());
    row.v = std::stod(next());
    row.phi = std::stod(next());
    row.error = std::stod(next());
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trace_json(std::ostream& out, const std::string& problem,
                      const SolveReport& report) {
  nlohmann::json doc;
  doc["problem"] = problem;
  doc["status"] = to_string(report.status);
  doc["counters"] = {{"iterations", report.counters.iterations},
                     {"f_evals", report.counters.f_evals},
                     {"grad_evals", report.counters.grad_evals},
                     {"wall_time", report.counters.wall_time}};
  nlohmann::json rows = nlohmann::json::array();
  for (const TraceRow& row : report.trace) {
    nlohmann::json r;
    r["k"] = row.k;
    r["mu"] = row.mu;
    r["x"] = std::vector<double>(row.x.begin(), row.x.end());
    r["s"] = std::vector<double>(row.s.begin(), row.s.end());
    r["f"] = row.f;
    r["v"] = row.v;
    r["phi"] = row.phi;
    r["E"] = row.error;
    rows.push_back(std::move(r));
  }
  doc["trace"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_suite_json(std::ostream& out, const SuiteResult& result) {
  nlohmann::json doc;
  doc["label"] = result.label;
  nlohmann::json records = nlohmann::json::array();
  for (const SuiteRecord& rec : result.records) {
    records.push_back({{"problem", rec.problem},
                       {"status", to_string(rec.status)},
                       {"iterations", rec.iterations},
                       {"f_evals", rec.f_evals},
                       {"grad_evals", rec.grad_evals},
                       {"wall_time", rec.wall_time},
                       {"final_E", rec.final_error},
                       {"final_f", rec.final_f}});
  }
  doc["records"] = std::move(records);
  out << doc.dump(2) << '\n';
}

SuiteResult read_suite_json(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  SuiteResult result;
  result.label = doc.value("label", "unnamed");
  for (const auto& r : doc.at("records")) {
    SuiteRecord rec;
    rec.problem = r.at("problem").get<std::string>();
    rec.status = status_from_string(r.at("status").get<std::string>());
    rec.iterations = r.at("iterations").get<int>();
    rec.f_evals = r.value("f_evals", 0L);
    rec.grad_evals = r.value("grad_evals", 0L);
    rec.wall_time = r.value("wall_time", 0.0);
    rec.final_error = r.value("final_E", 0.0);
    rec.final_f = r.value("final_f", 0.0);
    result.records.push_back(std::move(rec));
  }
  return result;
}

void write_profile_csv(std::ostream& out,
                       const std::vector<ProfileCurve>& curves) {
  out << "solver,tau,fraction\n";
  for (const ProfileCurve& curve : curves) {
    for (const auto& [tau, fraction] : curve.points) {
      out << curve.label << ',' << fmt17(tau) << ',' << fmt17(fraction)
          << '\n';
    }
  }
}

}  // namespace ipr
