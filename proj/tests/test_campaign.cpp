#include "doctest.h"
#include "test_util.hpp"

#include "hullopt/campaign.hpp"
#include "hullopt/foamcase.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

using namespace hullopt;
using namespace hullopt::campaign;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir(const std::string& name) {
  const fs::path p = fs::path(HULLOPT_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

CampaignConfig small_config(const fs::path& out) {
  CampaignConfig c;
  c.budget = 12;
  c.base_seed = 7;
  c.out_dir = out;
  return c;
}

std::string tree_bytes(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    all += fs::relative(f, root).string() + "\n" + read_file(f) + "\n";
  }
  return all;
}

}  // namespace

TEST_CASE("scenario matrix") {
  const auto m = scenario_matrix();
  REQUIRE(m.pairs.size() == 25);
  std::set<std::pair<double, double>> distinct;
  for (const auto& s : m.pairs) distinct.insert({s.velocity, s.intensity_pct});
  CHECK(distinct.size() == 25);
  CHECK(m.pairs.front() == drag::Scenario{1.0, 0.1});
  CHECK(m.pairs.back() == drag::Scenario{10.0, 20.0});
  CHECK(m.pairs[1] == drag::Scenario{1.0, 2.0});
  CHECK(m.pairs[5] == drag::Scenario{2.5, 0.1});
  CHECK(m.pairs[kD1Index] == drag::Scenario{1.0, 0.1});
  CHECK(m.pairs[kD2Index] == drag::Scenario{10.0, 20.0});
}

TEST_CASE("evaluator names and config validation") {
  CHECK(evaluator_from_string("strip") == EvaluatorKind::Strip);
  CHECK(evaluator_from_string("foam-manual") == EvaluatorKind::FoamManual);
  CHECK(to_string(EvaluatorKind::FoamManual) == "foam-manual");
  CHECK_THROWS_AS(evaluator_from_string("cfd"), std::invalid_argument);

  CampaignConfig c;
  CHECK_NOTHROW(c.validate());
  c.budget = 10;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = CampaignConfig{};
  c.parallel = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = CampaignConfig{};
  c.evaluator = EvaluatorKind::FoamManual;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("metadata round trip") {
  CampaignConfig c;
  c.budget = 40;
  c.base_seed = 99;
  c.length_scale = 0.05;
  const auto back = config_from_metadata_json(campaign_metadata_json(c));
  CHECK(back.budget == 40);
  CHECK(back.base_seed == 99);
  CHECK(back.length_scale == 0.05);
  CHECK(back.evaluator == EvaluatorKind::Strip);
  CHECK(campaign_metadata_json(back) == campaign_metadata_json(c));
}

TEST_CASE("small campaign: persistence, determinism, parallel and resume") {
  const fs::path a = tmp_dir("camp_a");
  const fs::path b = tmp_dir("camp_b");
  const auto ra = run_campaign(small_config(a));
  auto cb = small_config(b);
  cb.parallel = 3;
  const auto rb = run_campaign(cb);

  REQUIRE(ra.entries.size() == 25);
  CHECK(ra.entries == rb.entries);
  CHECK(tree_bytes(a) == tree_bytes(b));

  for (std::size_t i = 0; i < 25; ++i) {
    const auto& e = ra.entries[i];
    CHECK(e.index == i);
    CHECK(e.seed == 7 + i);
    CHECK(e.trace.records.size() == 12);
    double m = 1e300;
    for (const auto& r : e.trace.records) m = std::min(m, r.drag);
    CHECK(e.optimal_drag == m);
    CHECK(fs::exists(a / ("scenario_" + std::to_string(i)) / "trace.jsonl"));
  }

  SUBCASE("resume after an interrupted run") {
    const std::string before = tree_bytes(a);
    fs::remove(a / "scenario_3" / "optimal.json");
    fs::remove_all(a / "scenario_17");
    {
      std::ofstream trunc(a / "scenario_9" / "trace.jsonl", std::ios::trunc);
      trunc << "{\"t\":1";
    }
    fs::remove(a / "scenario_9" / "optimal.json");
    const auto resumed = run_campaign(small_config(a));
    CHECK(resumed.entries == ra.entries);
    CHECK(tree_bytes(a) == before);
  }

  SUBCASE("load and cross-evaluate") {
    const auto loaded = load_campaign(a);
    CHECK(loaded.entries == ra.entries);
    const auto m = cross_evaluate(loaded);
    REQUIRE(m.size() == 25);
    for (std::size_t i = 0; i < 25; ++i) {
      CHECK(std::abs(m.at(i, i) - ra.entries[i].optimal_drag) <= 1e-9);
      for (std::size_t j = 0; j < 25; ++j) {
        CHECK(std::isfinite(m.at(i, j)));
        CHECK(m.at(i, j) > 0.0);
      }
    }
    const auto csv = matrix_csv(m);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 626);
    CHECK(csv.rfind("design_scenario,eval_scenario,velocity,intensity,drag_n\n", 0) == 0);

    const auto cmp = compare_d1_d2(m);
    CHECK(cmp.rows.size() == 23);
    CHECK(cmp.d1_lower + cmp.d2_lower + cmp.ties == 23);
    for (const auto& row : cmp.rows) {
      CHECK(row.eval_index != kD1Index);
      CHECK(row.eval_index != kD2Index);
    }
    CHECK(count_optimum_violations(m) >= 0);

    const fs::path rep = a / "report";
    write_report(loaded, m, rep);
    for (const char* f : {"matrix.csv", "optimal_designs.csv", "optimal_profiles.csv", "d1_d2.csv",
                          "d1_d2_summary.json", "drag_long.csv"}) {
      CHECK(fs::exists(rep / f));
    }
    CHECK(read_file(rep / "matrix.csv") == csv);
    const auto longform = read_file(rep / "drag_long.csv");
    CHECK(std::count(longform.begin(), longform.end(), '\n') == 76);
  }

  SUBCASE("a campaign directory refuses a different configuration") {
    auto other = small_config(a);
    other.base_seed = 8;
    CHECK_THROWS_AS(run_campaign(other), std::runtime_error);
  }
}

TEST_CASE("incomplete campaigns are not loadable") {
  const fs::path d = tmp_dir("camp_partial");
  write_file_atomic(d / "campaign.json", campaign_metadata_json(small_config(d)));
  CHECK_THROWS_AS(load_campaign(d), std::runtime_error);
}

TEST_CASE("in-memory campaign leaves no files") {
  CampaignConfig c;
  c.budget = 12;
  const auto r = run_campaign(c);
  CHECK(r.entries.size() == 25);
}

TEST_CASE("scenario optima beat the reference design at full budget") {
  const auto ref = testing::uniform_design(0.1, 0.5);
  CampaignConfig c;
  const auto pairs = scenario_matrix().pairs;
  for (std::size_t i : {kD1Index, kD2Index}) {
    const auto r = run_scenario(c, i, pairs[i], i, {});
    CHECK(r.trace.records.size() == 100);
    CHECK(r.optimal_drag <= drag::evaluate_drag(ref, pairs[i]).total);
  }
}

TEST_CASE("foam-manual objective writes cases and reads force logs") {
  const fs::path d = tmp_dir("foam_manual");
  CampaignConfig c;
  c.evaluator = EvaluatorKind::FoamManual;
  c.out_dir = d;
  const drag::Scenario s{5.0, 5.0};
  const auto objective = make_objective(c, s, d);
  const auto x = testing::uniform_design(0.1, 0.4).to_array();

  CHECK(std::isnan(objective(x)));
  CHECK(fs::exists(d / "cases" / "eval_001" / "0" / "k"));

  const fs::path log = foam::force_log_path(d / "cases" / "eval_002");
  fs::create_directories(log.parent_path());
  std::ofstream(log) << "# Time Fx Fy Fz\n1 (4 0 0)\n2 (3 0 0)\n";
  CHECK(objective(x) == 3.0);
}

TEST_CASE("atomic writes leave no temporaries") {
  const fs::path d = tmp_dir("atomic");
  write_file_atomic(d / "x.txt", "hello");
  write_file_atomic(d / "x.txt", "world");
  CHECK(read_file(d / "x.txt") == "world");
  int n = 0;
  for (const auto& e : fs::directory_iterator(d)) {
    (void)e;
    ++n;
  }
  CHECK(n == 1);
  CHECK_THROWS_AS(read_file(d / "missing"), std::runtime_error);
}
