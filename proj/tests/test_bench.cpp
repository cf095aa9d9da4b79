#include <sstream>

#include <doctest.h>

#include "ipr/bench.hpp"
#include "ipr/problem.hpp"
#include "test_util.hpp"

using namespace ipr;

namespace {

SuiteResult fixture(const std::string& label, std::vector<int> iters,
                    std::vector<bool> solved) {
  SuiteResult result;
  result.label = label;
  for (std::size_t i = 0; i < iters.size(); ++i) {
    SuiteRecord rec;
    rec.problem = "p" + std::to_string(i);
    rec.status = solved[i] ? SolveStatus::kkt_solved : SolveStatus::max_iters;
    rec.iterations = iters[i];
    rec.f_evals = iters[i] + 1;
    rec.grad_evals = iters[i] + 1;
    rec.wall_time = 0.001 * iters[i];
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace

TEST_CASE("suite of wb alone") {
  const SuiteResult result = run_suite({"wb"}, SolverConfig{}, "ipr", 1);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].status == SolveStatus::kkt_solved);
  CHECK(result.records[0].iterations == 4);
  CHECK(result.records[0].final_error <= 1e-8);
}

TEST_CASE("empty suite is a usage error") {
  CHECK_THROWS_AS(run_suite({}, SolverConfig{}, "x", 1),
                  std::invalid_argument);
}

TEST_CASE("unknown suite member is a usage error") {
  CHECK_THROWS_AS(run_suite({"wb", "nosuch"}, SolverConfig{}, "x", 1),
                  std::invalid_argument);
}

TEST_CASE("hand-built profile fractions") {
  // Metrics per problem: solver1 (2, 3, 5), solver2 (4, 3, 1).
  const SuiteResult s1 = fixture("s1", {2, 3, 5}, {true, true, true});
  const SuiteResult s2 = fixture("s2", {4, 3, 1}, {true, true, true});
  const auto curves = performance_profile({s1, s2},
                                          ProfileMetric::iterations);
  REQUIRE(curves.size() == 2);
  // Ratios: s1 -> (1, 1, 5), s2 -> (2, 1, 1).
  REQUIRE(curves[0].points.size() == 2);
  CHECK(curves[0].points[0].first == 1.0);
  CHECK(curves[0].points[0].second == doctest::Approx(2.0 / 3.0));
  CHECK(curves[0].points[1].first == 5.0);
  CHECK(curves[0].points[1].second == doctest::Approx(1.0));
  REQUIRE(curves[1].points.size() == 2);
  CHECK(curves[1].points[0].first == 1.0);
  CHECK(curves[1].points[0].second == doctest::Approx(2.0 / 3.0));
  CHECK(curves[1].points[1].first == 2.0);
  CHECK(curves[1].points[1].second == doctest::Approx(1.0));
}

TEST_CASE("identical result sets profile to 1 at tau = 1") {
  const SuiteResult s1 = fixture("a", {2, 3, 5}, {true, true, true});
  const SuiteResult s2 = fixture("b", {2, 3, 5}, {true, true, true});
  const auto curves = performance_profile({s1, s2},
                                          ProfileMetric::iterations);
  for (const ProfileCurve& curve : curves) {
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].first == 1.0);
    CHECK(curve.points[0].second == doctest::Approx(1.0));
  }
}

TEST_CASE("an always-failing solver has an empty curve") {
  const SuiteResult ok = fixture("ok", {2, 3, 5}, {true, true, true});
  const SuiteResult bad = fixture("bad", {2, 3, 5}, {false, false, false});
  const auto curves = performance_profile({ok, bad},
                                          ProfileMetric::iterations);
  CHECK(curves[1].points.empty());
  CHECK(curves[0].points.size() == 1);
  CHECK(curves[0].points[0].second == doctest::Approx(1.0));
}

TEST_CASE("profile fractions are within [0,1], nondecreasing, scale-free") {
  const SuiteResult s1 = fixture("s1", {7, 2, 9, 4}, {true, true, false, true});
  const SuiteResult s2 = fixture("s2", {3, 6, 2, 4}, {true, false, true, true});
  auto curves = performance_profile({s1, s2}, ProfileMetric::wall_time);
  for (const ProfileCurve& curve : curves) {
    double prev = 0.0;
    for (const auto& [tau, fraction] : curve.points) {
      CHECK(tau >= 1.0);
      CHECK(fraction >= prev);
      CHECK(fraction <= 1.0);
      prev = fraction;
    }
  }
  // Uniform scaling of the metric leaves the curves unchanged.
  SuiteResult s1s = s1;
  SuiteResult s2s = s2;
  for (auto* r : {&s1s, &s2s}) {
    for (SuiteRecord& rec : r->records) {
      rec.wall_time *= 7.0;
    }
  }
  auto scaled = performance_profile({s1s, s2s}, ProfileMetric::wall_time);
  for (std::size_t c = 0; c < curves.size(); ++c) {
    REQUIRE(scaled[c].points.size() == curves[c].points.size());
    for (std::size_t i = 0; i < curves[c].points.size(); ++i) {
      CHECK(scaled[c].points[i].first ==
            doctest::Approx(curves[c].points[i].first));
      CHECK(scaled[c].points[i].second == curves[c].points[i].second);
    }
  }
}

TEST_CASE("profile rejects mismatched problem lists") {
  const SuiteResult s1 = fixture("s1", {2, 3}, {true, true});
  SuiteResult s2 = fixture("s2", {2, 3}, {true, true});
  s2.records[1].problem = "other";
  CHECK_THROWS_AS(performance_profile({s1, s2}, ProfileMetric::iterations),
                  std::invalid_argument);
  CHECK_THROWS_AS(performance_profile({s1}, ProfileMetric::iterations),
                  std::invalid_argument);
}

TEST_CASE("trace CSV round trip reproduces values bitwise") {
  const SolveReport report =
      solve(wb_problem(), Vector(), Vector(), Vector());
  std::stringstream buffer;
  write_trace_csv(buffer, report);
  const std::vector<TraceRow> rows = parse_trace_csv(buffer);
  REQUIRE(rows.size() == report.trace.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].k == report.trace[i].k);
    CHECK(rows[i].mu == report.trace[i].mu);
    CHECK(rows[i].x[0] == report.trace[i].x[0]);
    CHECK(rows[i].s[0] == report.trace[i].s[0]);
    CHECK(rows[i].s[1] == report.trace[i].s[1]);
    CHECK(rows[i].f == report.trace[i].f);
    CHECK(rows[i].v == report.trace[i].v);
    CHECK(rows[i].phi == report.trace[i].phi);
    CHECK(rows[i].error == report.trace[i].error);
  }
}

TEST_CASE("suite JSON round trip") {
  const SuiteResult result = fixture("ipr", {2, 3, 5}, {true, false, true});
  std::stringstream buffer;
  write_suite_json(buffer, result);
  const SuiteResult back = read_suite_json(buffer);
  REQUIRE(back.records.size() == result.records.size());
  CHECK(back.label == result.label);
  for (std::size_t i = 0; i < back.records.size(); ++i) {
    CHECK(back.records[i].problem == result.records[i].problem);
    CHECK(back.records[i].status == result.records[i].status);
    CHECK(back.records[i].iterations == result.records[i].iterations);
  }
}

TEST_CASE("profile metric names") {
  CHECK(profile_metric_from_string("iterations") ==
        ProfileMetric::iterations);
  CHECK(profile_metric_from_string("wall_time") == ProfileMetric::wall_time);
  CHECK_THROWS_AS(profile_metric_from_string("cpu"), std::invalid_argument);
}

TEST_CASE("trace JSON mentions status and rows") {
  const SolveReport report =
      solve(wb_problem(), Vector(), Vector(), Vector());
  std::stringstream buffer;
  write_trace_json(buffer, "wb", report);
  const std::string text = buffer.str();
  CHECK(text.find("kkt_solved") != std::string::npos);
  CHECK(text.find("\"trace\"") != std::string::npos);
}
