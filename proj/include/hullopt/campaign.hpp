#pragma once

// The 5 x 5 velocity / turbulence-intensity scenario matrix: one BO run per
// scenario, cross-evaluation of every scenario optimum in every scenario,
// and the D1 (1 m/s, 0.1 %) versus D2 (10 m/s, 20 %) robustness comparison.
//
// On-disk layout of a campaign directory:
//   campaign.json                 metadata (budget, seed, evaluator, fluid, scenarios)
//   scenario_<i>/trace.jsonl      BO trace, one record per evaluation
//   scenario_<i>/optimal.json     best design found (design JSON)
//   cross_eval.csv                25 x 25 matrix in long form
//   report/                       comparison and plot-ready outputs

#include "hullopt/bo.hpp"
#include "hullopt/drag.hpp"
#include "hullopt/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hullopt::campaign {

struct ScenarioMatrix {
  std::vector<double> velocities;   // m/s
  std::vector<double> intensities;  // percent
  std::vector<drag::Scenario> pairs;  // row-major: velocity, then intensity
};

ScenarioMatrix scenario_matrix();

inline constexpr std::size_t kD1Index = 0;   // (1 m/s, 0.1 %)
inline constexpr std::size_t kD2Index = 24;  // (10 m/s, 20 %)

enum class EvaluatorKind { Strip, FoamManual };

std::string_view to_string(EvaluatorKind kind);
/// Accepts "strip" and "foam-manual".
EvaluatorKind evaluator_from_string(std::string_view name);

struct CampaignConfig {
  int budget = 100;
  std::uint64_t base_seed = 0;
  EvaluatorKind evaluator = EvaluatorKind::Strip;
  int parallel = 1;
  int n_init = 10;
  double delta = 0.1;
  int stations = kDefaultQuadratureStations;
  double length_scale = 0.07;  // turbulent length scale for emitted cases
  drag::FluidProps fluid;
  /// Empty: keep results in memory only (no persistence, no resume).
  std::filesystem::path out_dir;

  void validate() const;
};

struct ScenarioResult {
  std::size_t index = 0;
  drag::Scenario scenario{};
  std::uint64_t seed = 0;
  bo::Trace trace;
  DesignVector optimum;
  double optimal_drag = 0.0;

  bool operator==(const ScenarioResult&) const = default;
};

struct CampaignResult {
  CampaignConfig config;
  std::vector<ScenarioResult> entries;
};

/// BO settings used for every scenario of a campaign.
bo::BoConfig scenario_bo_config(const CampaignConfig& config, std::uint64_t seed);

/// Objective bound to one scenario. The foam-manual evaluator writes a case
/// per evaluation under `scenario_dir/cases/eval_<t>` and reads back its
/// force log; evaluations without a log count as failures.
bo::Objective make_objective(const CampaignConfig& config, const drag::Scenario& scenario,
                             const std::filesystem::path& scenario_dir);

/// Runs BO for one scenario; persists into `scenario_dir` when non-empty.
ScenarioResult run_scenario(const CampaignConfig& config, std::size_t index,
                            const drag::Scenario& scenario, std::uint64_t seed,
                            const std::filesystem::path& scenario_dir);

void save_scenario(const ScenarioResult& result, const std::filesystem::path& scenario_dir);

/// Loads completed scenario `index` of a campaign; returns false when files
/// are missing or the trace is incomplete.
bool load_scenario(const std::filesystem::path& scenario_dir, const CampaignConfig& config,
                   std::size_t index, ScenarioResult& out);

std::string campaign_metadata_json(const CampaignConfig& config);
CampaignConfig config_from_metadata_json(const std::string& text);

/// Runs (or resumes) all 25 scenarios with seed base_seed + index, up to
/// `parallel` at a time. Results do not depend on `parallel`.
CampaignResult run_campaign(const CampaignConfig& config);

/// Reads a complete campaign directory.
CampaignResult load_campaign(const std::filesystem::path& dir);

struct CrossEvalMatrix {
  std::vector<drag::Scenario> scenarios;
  std::vector<double> drag;  // row = design's home scenario, column = evaluation scenario

  std::size_t size() const { return scenarios.size(); }
  double at(std::size_t design, std::size_t eval) const { return drag[design * size() + eval]; }
};

/// Analytic-oracle drag of each scenario optimum in every scenario. For
/// strip-evaluator campaigns the diagonal must reproduce the campaign optima
/// within 1e-9 (std::logic_error otherwise).
CrossEvalMatrix cross_evaluate(const CampaignResult& result);

/// Header design_scenario,eval_scenario,velocity,intensity,drag_n; 9 significant digits.
std::string matrix_csv(const CrossEvalMatrix& matrix);

struct D1D2Row {
  std::size_t eval_index;
  drag::Scenario scenario;
  double d1_drag;
  double d2_drag;
};

struct D1D2Comparison {
  std::vector<D1D2Row> rows;  // scenarios native to neither design
  int d2_lower = 0;
  int d1_lower = 0;
  int ties = 0;
};

D1D2Comparison compare_d1_d2(const CrossEvalMatrix& matrix);

/// Off-diagonal entries (i, j) with drag more than rel_tol below (j, j):
/// imported designs beating the scenario's own optimum by a margin.
int count_optimum_violations(const CrossEvalMatrix& matrix, double rel_tol = 0.05);

/// Writes matrix.csv, optimal_designs.csv, optimal_profiles.csv, d1_d2.csv,
/// d1_d2_summary.json and drag_long.csv into `dir`.
void write_report(const CampaignResult& result, const CrossEvalMatrix& matrix,
                  const std::filesystem::path& dir);

/// Writes a file only through a temporary + rename, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace hullopt::campaign
