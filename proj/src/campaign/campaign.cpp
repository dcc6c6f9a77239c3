#include "hullopt/campaign.hpp"

#include "hullopt/foamcase.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hullopt::campaign {

namespace fs = std::filesystem;

ScenarioMatrix scenario_matrix() {
  ScenarioMatrix m;
  m.velocities = {1.0, 2.5, 5.0, 7.5, 10.0};
  m.intensities = {0.1, 2.0, 5.0, 10.0, 20.0};
  for (double u : m.velocities) {
    for (double i : m.intensities) m.pairs.push_back({u, i});
  }
  return m;
}

std::string_view to_string(EvaluatorKind kind) {
  return kind == EvaluatorKind::Strip ? "strip" : "foam-manual";
}

EvaluatorKind evaluator_from_string(std::string_view name) {
  if (name == "strip") return EvaluatorKind::Strip;
  if (name == "foam-manual") return EvaluatorKind::FoamManual;
  throw std::invalid_argument("unknown evaluator '" + std::string(name) +
                              "' (expected strip or foam-manual)");
}

void CampaignConfig::validate() const {
  if (n_init < 2 || budget <= n_init) {
    throw std::invalid_argument("campaign budget must exceed the initial design size");
  }
  if (parallel < 1) throw std::invalid_argument("parallelism must be >= 1");
  if (stations < 1) throw std::invalid_argument("stations must be >= 1");
  if (!(length_scale > 0.0)) throw std::invalid_argument("length scale must be > 0");
  fluid.validate();
  if (evaluator == EvaluatorKind::FoamManual && out_dir.empty()) {
    throw std::invalid_argument("the foam-manual evaluator needs an output directory");
  }
}

bo::BoConfig scenario_bo_config(const CampaignConfig& config, std::uint64_t seed) {
  bo::BoConfig bc;
  bc.budget = config.budget;
  bc.n_init = config.n_init;
  bc.delta = config.delta;
  bc.seed = seed;
  bc.bounds = design_bounds();
  return bc;
}

bo::Objective make_objective(const CampaignConfig& config, const drag::Scenario& scenario,
                             const fs::path& scenario_dir) {
  if (config.evaluator == EvaluatorKind::Strip) {
    return [fluid = config.fluid, stations = config.stations,
            scenario](std::span<const double> x) {
      return drag::evaluate_drag(DesignVector::from_array(x), scenario, fluid, stations).total;
    };
  }

  auto counter = std::make_shared<int>(0);
  return [config, scenario, scenario_dir, counter](std::span<const double> x) -> double {
    char name[32];
    std::snprintf(name, sizeof(name), "eval_%03d", ++*counter);
    const fs::path case_dir = scenario_dir / "cases" / name;
    const auto profile = HullProfile::from_design(DesignVector::from_array(x));
    const auto ic = foam::turbulence_ic(scenario.velocity, scenario.intensity_pct,
                                        config.length_scale);
    foam::write_case(case_dir, profile, scenario, config.fluid, ic);
    const fs::path log = foam::force_log_path(case_dir);
    if (!fs::exists(log)) return std::nan("");
    return foam::parse_force_log(read_file(log)).final_drag;
  };
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioResult run_scenario(const CampaignConfig& config, std::size_t index,
                            const drag::Scenario& scenario, std::uint64_t seed,
                            const fs::path& scenario_dir) {
  scenario.validate();
  ScenarioResult r;
  r.index = index;
  r.scenario = scenario;
  r.seed = seed;
  r.trace = bo::optimize(make_objective(config, scenario, scenario_dir),
                         scenario_bo_config(config, seed));
  const auto& best = r.trace.incumbent();
  r.optimum = DesignVector::from_array(best.x);
  r.optimal_drag = best.drag;
  if (!scenario_dir.empty()) save_scenario(r, scenario_dir);
  return r;
}

namespace {

fs::path scenario_dir_of(const fs::path& root, std::size_t index) {
  return root / ("scenario_" + std::to_string(index));
}

}  // namespace

void save_scenario(const ScenarioResult& result, const fs::path& scenario_dir) {
  write_file_atomic(scenario_dir / "trace.jsonl", bo::trace_to_jsonl(result.trace));
  // Written last: its presence marks the scenario as complete.
  write_file_atomic(scenario_dir / "optimal.json", design_to_json(result.optimum) + "\n");
}

bool load_scenario(const fs::path& scenario_dir, const CampaignConfig& config,
                   std::size_t index, ScenarioResult& out) {
  const fs::path optimal = scenario_dir / "optimal.json";
  const fs::path trace = scenario_dir / "trace.jsonl";
  if (!fs::exists(optimal) || !fs::exists(trace)) return false;

  const auto pairs = scenario_matrix().pairs;
  if (index >= pairs.size()) throw std::out_of_range("scenario index out of range");
  ScenarioResult r;
  r.trace = bo::trace_from_jsonl(read_file(trace));
  if (r.trace.records.size() != std::size_t(config.budget)) return false;
  r.index = index;
  r.scenario = pairs[index];
  r.seed = config.base_seed + index;
  const auto& best = r.trace.incumbent();
  r.optimum = DesignVector::from_array(best.x);
  r.optimal_drag = best.drag;
  if (!(design_from_json(read_file(optimal)) == r.optimum)) {
    throw std::runtime_error(optimal.string() + " disagrees with the trace incumbent");
  }
  out = std::move(r);
  return true;
}

std::string campaign_metadata_json(const CampaignConfig& config) {
  nlohmann::ordered_json j;
  j["budget"] = config.budget;
  j["base_seed"] = config.base_seed;
  j["evaluator"] = to_string(config.evaluator);
  j["n_init"] = config.n_init;
  j["delta"] = config.delta;
  j["stations"] = config.stations;
  j["length_scale"] = config.length_scale;
  j["fluid"] = {{"density", config.fluid.density},
                {"kinematic_viscosity", config.fluid.kinematic_viscosity}};
  nlohmann::ordered_json scenarios = nlohmann::ordered_json::array();
  for (const auto& s : scenario_matrix().pairs) {
    scenarios.push_back({{"velocity", s.velocity}, {"intensity", s.intensity_pct}});
  }
  j["scenarios"] = scenarios;
  return j.dump(2) + "\n";
}

CampaignConfig config_from_metadata_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  CampaignConfig c;
  c.budget = j.at("budget").get<int>();
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.evaluator = evaluator_from_string(j.at("evaluator").get<std::string>());
  c.n_init = j.at("n_init").get<int>();
  c.delta = j.at("delta").get<double>();
  c.stations = j.at("stations").get<int>();
  c.length_scale = j.at("length_scale").get<double>();
  c.fluid.density = j.at("fluid").at("density").get<double>();
  c.fluid.kinematic_viscosity = j.at("fluid").at("kinematic_viscosity").get<double>();
  return c;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto pairs = scenario_matrix().pairs;
  const bool persist = !config.out_dir.empty();

  if (persist) {
    const fs::path meta = config.out_dir / "campaign.json";
    const std::string wanted = campaign_metadata_json(config);
    if (fs::exists(meta)) {
      if (read_file(meta) != wanted) {
        throw std::runtime_error(meta.string() +
                                 " belongs to a campaign with a different configuration");
      }
    } else {
      write_file_atomic(meta, wanted);
    }
  }

  CampaignResult result;
  result.config = config;
  result.entries.resize(pairs.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (persist && load_scenario(scenario_dir_of(config.out_dir, i), config, i, result.entries[i])) {
      continue;
    }
    pending.push_back(i);
  }

  std::vector<std::string> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < pending.size(); k = next++) {
      const std::size_t i = pending[k];
      try {
        const fs::path dir = persist ? scenario_dir_of(config.out_dir, i) : fs::path{};
        result.entries[i] = run_scenario(config, i, pairs[i], config.base_seed + i, dir);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  const std::size_t threads = std::min<std::size_t>(std::size_t(config.parallel), pending.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!errors[i].empty()) {
      char label[96];
      std::snprintf(label, sizeof(label), "scenario %zu (%g m/s, %g%%) failed: ", i,
                    pairs[i].velocity, pairs[i].intensity_pct);
      throw std::runtime_error(label + errors[i]);
    }
  }
  return result;
}

CampaignResult load_campaign(const fs::path& dir) {
  CampaignResult result;
  result.config = config_from_metadata_json(read_file(dir / "campaign.json"));
  result.config.out_dir = dir;
  const auto pairs = scenario_matrix().pairs;
  result.entries.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!load_scenario(scenario_dir_of(dir, i), result.config, i, result.entries[i])) {
      throw std::runtime_error("campaign in " + dir.string() + " is incomplete: scenario " +
                               std::to_string(i) + " missing");
    }
  }
  return result;
}

CrossEvalMatrix cross_evaluate(const CampaignResult& result) {
  CrossEvalMatrix m;
  const std::size_t n = result.entries.size();
  for (const auto& e : result.entries) m.scenarios.push_back(e.scenario);
  m.drag.resize(n * n);
  const auto& cfg = result.config;
  for (std::size_t i = 0; i < n; ++i) {
    const auto profile = HullProfile::from_design(result.entries[i].optimum);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = drag::evaluate_drag(profile, m.scenarios[j], cfg.fluid, cfg.stations).total;
      if (!std::isfinite(d) || !(d > 0.0)) {
        throw std::logic_error("cross-evaluation produced a non-positive drag");
      }
      m.drag[i * n + j] = d;
    }
    if (cfg.evaluator == EvaluatorKind::Strip &&
        std::abs(m.at(i, i) - result.entries[i].optimal_drag) > 1e-9) {
      throw std::logic_error("cross-evaluation diagonal disagrees with campaign optimum of scenario " +
                             std::to_string(i));
    }
  }
  return m;
}

D1D2Comparison compare_d1_d2(const CrossEvalMatrix& matrix) {
  if (matrix.size() <= kD2Index) throw std::invalid_argument("D1/D2 comparison needs 25 scenarios");
  D1D2Comparison c;
  for (std::size_t j = 0; j < matrix.size(); ++j) {
    if (j == kD1Index || j == kD2Index) continue;
    const D1D2Row row{j, matrix.scenarios[j], matrix.at(kD1Index, j), matrix.at(kD2Index, j)};
    if (row.d2_drag < row.d1_drag) {
      ++c.d2_lower;
    } else if (row.d1_drag < row.d2_drag) {
      ++c.d1_lower;
    } else {
      ++c.ties;
    }
    c.rows.push_back(row);
  }
  return c;
}

int count_optimum_violations(const CrossEvalMatrix& matrix, double rel_tol) {
  int count = 0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (i != j && matrix.at(i, j) < matrix.at(j, j) * (1.0 - rel_tol)) ++count;
    }
  }
  return count;
}

}  // namespace hullopt::campaign
