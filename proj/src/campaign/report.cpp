#include "hullopt/campaign.hpp"

#include "hullopt/format.hpp"

#include "json.hpp"

namespace hullopt::campaign {

namespace fs = std::filesystem;

namespace {

constexpr int kProfileSamples = 101;

std::string scenario_cols(const drag::Scenario& s) {
  return format_sig9(s.velocity) + "," + format_sig9(s.intensity_pct);
}

}  // namespace

std::string matrix_csv(const CrossEvalMatrix& matrix) {
  std::string out = "design_scenario,eval_scenario,velocity,intensity,drag_n\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             scenario_cols(matrix.scenarios[j]) + "," + format_sig9(matrix.at(i, j)) + "\n";
    }
  }
  return out;
}

void write_report(const CampaignResult& result, const CrossEvalMatrix& matrix, const fs::path& dir) {
  fs::create_directories(dir);
  write_file_atomic(dir / "matrix.csv", matrix_csv(matrix));

  std::string designs = "scenario,velocity,intensity,d0,d1,d2,d3,d4,d5,nose_length,drag_n\n";
  std::string profiles = "scenario,velocity,intensity,x,r\n";
  for (const auto& e : result.entries) {
    designs += std::to_string(e.index) + "," + scenario_cols(e.scenario);
    for (double v : e.optimum.to_array()) designs += "," + format_sig9(v);
    designs += "," + format_sig9(e.optimal_drag) + "\n";

    const auto profile = HullProfile::from_design(e.optimum);
    const std::string csv = export_profile_csv(profile, kProfileSamples);
    const std::string prefix = std::to_string(e.index) + "," + scenario_cols(e.scenario) + ",";
    std::size_t pos = csv.find('\n') + 1;  // skip "x,r"
    while (pos < csv.size()) {
      const std::size_t end = csv.find('\n', pos);
      profiles += prefix + csv.substr(pos, end - pos + 1);
      pos = end + 1;
    }
  }
  write_file_atomic(dir / "optimal_designs.csv", designs);
  write_file_atomic(dir / "optimal_profiles.csv", profiles);

  const D1D2Comparison cmp = compare_d1_d2(matrix);
  std::string d1d2 = "eval_scenario,velocity,intensity,d1_drag_n,d2_drag_n,lower\n";
  for (const auto& row : cmp.rows) {
    const char* lower = row.d2_drag < row.d1_drag ? "D2" : (row.d1_drag < row.d2_drag ? "D1" : "tie");
    d1d2 += std::to_string(row.eval_index) + "," + scenario_cols(row.scenario) + "," +
            format_sig9(row.d1_drag) + "," + format_sig9(row.d2_drag) + "," + lower + "\n";
  }
  write_file_atomic(dir / "d1_d2.csv", d1d2);

  nlohmann::ordered_json summary;
  summary["d1_scenario"] = kD1Index;
  summary["d2_scenario"] = kD2Index;
  summary["compared_scenarios"] = cmp.rows.size();
  summary["d2_lower"] = cmp.d2_lower;
  summary["d1_lower"] = cmp.d1_lower;
  summary["ties"] = cmp.ties;
  summary["imported_beats_native_by_5pct"] = count_optimum_violations(matrix, 0.05);
  write_file_atomic(dir / "d1_d2_summary.json", summary.dump(2) + "\n");

  std::string long_form = "scenario,velocity,intensity,design,drag_n\n";
  for (std::size_t j = 0; j < matrix.size(); ++j) {
    const std::string cols = std::to_string(j) + "," + scenario_cols(matrix.scenarios[j]) + ",";
    long_form += cols + "native," + format_sig9(matrix.at(j, j)) + "\n";
    long_form += cols + "D1," + format_sig9(matrix.at(kD1Index, j)) + "\n";
    long_form += cols + "D2," + format_sig9(matrix.at(kD2Index, j)) + "\n";
  }
  write_file_atomic(dir / "drag_long.csv", long_form);
}

}  // namespace hullopt::campaign
