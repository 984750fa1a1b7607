#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "fairkc/harness.hpp"
#include "fairkc/instances.hpp"
#include "suites.hpp"

using namespace fairkc;
using namespace fairkc::testing;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fairkc_test_" + name)).string();
}

}  // namespace

TEST_CASE("csv instances") {
  const auto inst = parse_csv_instance("f0,f1,color\n0,0,a\n3,4,b\n0,1,a\n");
  CHECK(inst.n() == 3);
  CHECK(inst.m() == 2);
  CHECK(inst.d(0, 1) == doctest::Approx(5.0));
  CHECK(inst.color(0) == inst.color(2));
  CHECK(inst.color(0) != inst.color(1));
  CHECK_THROWS_AS(parse_csv_instance("f0,color\n0,a\n1,a\n"), ColorCardinality);
  CHECK_THROWS_AS(parse_csv_instance("f0,color\n0,a\nx,b\n"), ParseError);
  CHECK_THROWS_AS(parse_csv_instance("f0,color\n0,a\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_csv_instance("f0,f1\n0,1\n"), ParseError);
  try {
    parse_csv_instance("f0,color\n0,a\nx,b\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}

TEST_CASE("matrix json instances") {
  const auto inst = gen_l_community(2, 2, 1.5, CommunityPattern::kAlternating);
  CHECK(parse_matrix_json(matrix_json(inst)) == inst);
  CHECK_THROWS_AS(
      parse_matrix_json(R"({"n":2,"m":2,"colors":[0,1],"dist":[[0,1],[2,0]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix_json(R"({"n":2,"m":1,"colors":[0,0],"dist":[[0,1],[1,0]]})"),
      ColorCardinality);
  CHECK_THROWS_AS(parse_matrix_json("{"), ParseError);
}

TEST_CASE("bundled adult_mini") {
  const auto inst = load_instance(std::string(FAIRKC_DATA_DIR) + "/adult_mini.csv");
  CHECK(inst.n() == 500);
  CHECK(inst.m() == 2);
  auto counts = inst.color_counts();
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{150, 350});
  CHECK(inst.proportion(0) + inst.proportion(1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(load_instance("/nonexistent/file.csv"), Error);
}

TEST_CASE("solution json round trip") {
  const Solution sol{{2, 0}, {0, 0, 2, 2}};
  CHECK(parse_solution_json(solution_json(sol)).centers == sol.centers);
  CHECK(parse_solution_json(solution_json(sol)).assign == sol.assign);
  CHECK_THROWS_AS(parse_solution_json(R"({"centers":[0]})"), ParseError);
}

TEST_CASE("experiment on a small instance") {
  const auto inst = gen_random(40, 3, 2, std::vector<double>{0.5, 0.3, 0.2}, 5);
  ExperimentConfig cfg;
  cfg.k_values = {3, 6};
  cfg.seed = 1;
  const auto res = run_experiment(inst, cfg);
  const auto& rep = res.report;
  REQUIRE(rep.rows.size() == 10);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    CHECK(r.k == cfg.k_values[i / 5]);
    CHECK(r.algorithm == kAlgorithms[i % 5]);
    if (r.status != "ok") continue;
    if (r.algorithm == "color-blind") CHECK(*r.pof == 1.0);
    if (r.algorithm == "gf-to-gfds" || r.algorithm == "ds-to-gfds") {
      CHECK(*r.ds_violation == 0);
    }
    if (r.algorithm == "gf-to-gfds") CHECK(*r.gf_violation <= 2 + 1e-9);
  }
  CHECK(res.timing.rows.size() == 10);
  CHECK(report_json(rep) == report_json(run_experiment(inst, cfg).report));

  CHECK(parse_report_json(report_json(rep)) == rep);
  const auto csv_back = parse_report_csv(report_csv(rep));
  CHECK(csv_back.rows == rep.rows);
  const auto csv = report_csv(rep);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);

  const auto path = tmp_path("report.json");
  emit_report(rep, path, ReportFormat::kJson);
  CHECK(parse_report(path, ReportFormat::kJson) == rep);
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_report(rep, "/nonexistent/dir/r.json", ReportFormat::kJson), Error);
  try {
    emit_report(rep, "/nonexistent/dir/r.json", ReportFormat::kJson);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/r.json") != std::string::npos);
  }

  cfg.delta = 1.0;
  CHECK_THROWS(run_experiment(inst, cfg));
}

TEST_CASE("infeasible rows are recorded in place") {
  const auto inst = gen_l_community(2, 2, 1.0, CommunityPattern::kAlternating);
  ExperimentConfig cfg;
  cfg.k_values = {1};
  cfg.theta = 1.0;  // asks for one center per color with k = 1
  const auto rep = run_experiment(inst, cfg).report;
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].status == "ok");
  CHECK(rep.rows[2].status == "error");
  CHECK(rep.rows[2].message.find("k_lo") != std::string::npos);
  CHECK_FALSE(rep.rows[2].cost);
  CHECK(rep.rows[4].status != "ok");
  CHECK(rep.rows[4].message.find("input stage failed") != std::string::npos);
}

TEST_CASE("experiment config parsing") {
  const auto cfg = parse_experiment_config(
      R"({"input":"a.csv","k_values":[2,4],"delta":0.1,"theta":0.5,"p":2,"seed":3,"output":"r.csv"})");
  CHECK(cfg.k_values == std::vector<int>{2, 4});
  CHECK(cfg.p == 2);
  CHECK(*cfg.seed == 3);
  CHECK(report_format_for(cfg.output) == ReportFormat::kCsv);
  CHECK(report_format_for("r.json") == ReportFormat::kJson);
  CHECK_THROWS_AS(parse_experiment_config(R"({"input":1})"), ParseError);
}
