#include "hullopt/cli.hpp"

#include "hullopt/campaign.hpp"
#include "hullopt/drag.hpp"
#include "hullopt/foamcase.hpp"
#include "hullopt/geometry.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace hullopt::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string evaluator = "strip";
  int budget = 100;
  std::uint64_t seed = 0;
  std::string out;
  double velocity = 0.0;
  double intensity = 0.0;
  int parallel = 1;

  std::string design_file;
  std::string campaign_dir;
  std::string stl_file;
  std::string csv_file;
  std::string case_dir;
  double length_scale = foam::kDefaultLengthScale;
  int stations = kDefaultQuadratureStations;
  int n_axial = 200;
  int n_circ = 64;
  int samples = 201;
};

DesignVector load_design(const std::string& path) {
  return design_from_json(campaign::read_file(path));
}

drag::Scenario scenario_of(const RunConfig& rc) {
  drag::Scenario s{rc.velocity, rc.intensity};
  s.validate();
  return s;
}

campaign::CampaignConfig campaign_config(const RunConfig& rc) {
  campaign::CampaignConfig c;
  c.budget = rc.budget;
  c.base_seed = rc.seed;
  c.evaluator = campaign::evaluator_from_string(rc.evaluator);
  c.parallel = rc.parallel;
  c.out_dir = rc.out;
  return c;
}

void write_campaign_outputs(const campaign::CampaignResult& result, const fs::path& dir) {
  const auto matrix = campaign::cross_evaluate(result);
  campaign::write_file_atomic(dir / "cross_eval.csv", campaign::matrix_csv(matrix));
  campaign::write_report(result, matrix, dir / "report");
}

int cmd_evaluate(const RunConfig& rc, std::ostream& out) {
  const auto b = drag::evaluate_drag(load_design(rc.design_file), scenario_of(rc), {}, rc.stations);
  out << drag::breakdown_to_json(b) << "\n";
  return kExitOk;
}

int cmd_optimize(const RunConfig& rc, std::ostream& out) {
  auto cfg = campaign_config(rc);
  cfg.validate();
  const auto r = campaign::run_scenario(cfg, 0, scenario_of(rc), rc.seed, rc.out);
  nlohmann::ordered_json j;
  j["optimal_drag"] = r.optimal_drag;
  j["design"] = nlohmann::json::parse(design_to_json(r.optimum));
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_campaign(const RunConfig& rc, std::ostream& out) {
  const auto result = campaign::run_campaign(campaign_config(rc));
  if (result.config.evaluator == campaign::EvaluatorKind::Strip) {
    write_campaign_outputs(result, rc.out);
  }
  nlohmann::ordered_json j;
  j["scenarios"] = result.entries.size();
  j["out"] = rc.out;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_cross_eval(const RunConfig& rc) {
  const auto result = campaign::load_campaign(rc.campaign_dir);
  campaign::write_file_atomic(rc.out, campaign::matrix_csv(campaign::cross_evaluate(result)));
  return kExitOk;
}

int cmd_report(const RunConfig& rc) {
  const auto result = campaign::load_campaign(rc.campaign_dir);
  campaign::write_report(result, campaign::cross_evaluate(result), rc.out);
  return kExitOk;
}

int cmd_export(const RunConfig& rc, std::ostream& out) {
  const auto profile = HullProfile::from_design(load_design(rc.design_file));
  if (!rc.stl_file.empty()) {
    campaign::write_file_atomic(rc.stl_file, export_stl(profile, rc.n_axial, rc.n_circ));
  }
  if (!rc.csv_file.empty()) {
    campaign::write_file_atomic(rc.csv_file, export_profile_csv(profile, rc.samples));
  }
  nlohmann::ordered_json j;
  j["wetted_area"] = wetted_area(profile);
  j["volume"] = volume(profile);
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_foam_case(const RunConfig& rc) {
  const auto profile = HullProfile::from_design(load_design(rc.design_file));
  const auto scenario = scenario_of(rc);
  const auto ic = foam::turbulence_ic(scenario.velocity, scenario.intensity_pct, rc.length_scale);
  foam::write_case(rc.case_dir, profile, scenario, {}, ic);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Bayesian hull-drag optimization workbench", "hullopt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--velocity", rc.velocity, "Operating velocity [m/s]")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--intensity", rc.intensity, "Turbulence intensity [% of mean flow]")
        ->required()
        ->check(CLI::Range(0.0, 100.0));
  };
  const auto add_budget_seed = [&](CLI::App* sub) {
    sub->add_option("--budget", rc.budget, "Evaluations per scenario (>= 12)")
        ->check(CLI::Range(12, 1000000));
    sub->add_option("--seed", rc.seed, "Random seed");
    sub->add_option("--evaluator", rc.evaluator, "Drag evaluator")
        ->check(CLI::IsMember({"strip", "foam-manual"}));
  };

  auto* evaluate = app.add_subcommand("evaluate", "Drag breakdown of one design (JSON to stdout)");
  evaluate->add_option("--design", rc.design_file, "Design JSON file")->required();
  add_scenario(evaluate);
  evaluate->add_option("--stations", rc.stations, "Quadrature stations")->check(CLI::PositiveNumber);

  auto* optimize = app.add_subcommand("optimize", "Bayesian optimization for one scenario");
  add_scenario(optimize);
  add_budget_seed(optimize);
  optimize->add_option("--out", rc.out, "Output directory")->required();

  auto* camp = app.add_subcommand("campaign", "All 25 scenarios, cross-evaluation and report");
  add_budget_seed(camp);
  camp->add_option("--out", rc.out, "Campaign directory")->required();
  camp->add_option("--parallel", rc.parallel, "Scenarios run concurrently")->check(CLI::PositiveNumber);

  auto* cross = app.add_subcommand("cross-eval", "Cross-evaluation matrix of a finished campaign");
  cross->add_option("--campaign", rc.campaign_dir, "Campaign directory")->required();
  cross->add_option("--out", rc.out, "Matrix CSV file")->required();

  auto* report = app.add_subcommand("report", "Report files for a finished campaign");
  report->add_option("--campaign", rc.campaign_dir, "Campaign directory")->required();
  report->add_option("--out", rc.out, "Report directory")->required();

  auto* exp = app.add_subcommand("export", "Hull STL and/or profile CSV of a design");
  exp->add_option("--design", rc.design_file, "Design JSON file")->required();
  exp->add_option("--stl", rc.stl_file, "Binary STL output");
  exp->add_option("--csv", rc.csv_file, "Profile CSV output");
  exp->add_option("--n-axial", rc.n_axial, "Axial intervals of the STL")->check(CLI::Range(2, 100000));
  exp->add_option("--n-circ", rc.n_circ, "Points per STL ring")->check(CLI::Range(3, 100000));
  exp->add_option("--samples", rc.samples, "Profile CSV samples")->check(CLI::Range(2, 10000000));

  auto* foam_case = app.add_subcommand("foam-case", "Emit an external CFD case directory");
  foam_case->add_option("--design", rc.design_file, "Design JSON file")->required();
  add_scenario(foam_case);
  foam_case->add_option("--dir", rc.case_dir, "Case directory")->required();
  foam_case->add_option("--length-scale", rc.length_scale, "Turbulent length scale [m]")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(rc, out);
    if (*optimize) return cmd_optimize(rc, out);
    if (*camp) return cmd_campaign(rc, out);
    if (*cross) return cmd_cross_eval(rc);
    if (*report) return cmd_report(rc);
    if (*exp) return cmd_export(rc, out);
    if (*foam_case) return cmd_foam_case(rc);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hullopt::cli
