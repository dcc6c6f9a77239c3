#pragma once

// Inflow turbulence initial conditions and an external-CFD case emitter
// (OpenFOAM dictionary format) plus a parser for the solver's force log.

#include "hullopt/drag.hpp"
#include "hullopt/geometry.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hullopt::foam {

inline constexpr double kDefaultCmu = 0.09;
/// Turbulent length scale default: 7 % of the hull length.
inline constexpr double kDefaultLengthScale = 0.07 * kHullLength;

struct TurbulenceIC {
  double k;             // m^2/s^2
  double omega;         // 1/s
  double length_scale;  // m
  double c_mu;
};

/// k = 1.5 (U I)^2 with I = I_pct / 100; omega = sqrt(k) / (l C_mu^0.25).
TurbulenceIC turbulence_ic(double velocity, double intensity_pct,
                           double length_scale = kDefaultLengthScale,
                           double c_mu = kDefaultCmu);

/// Relative paths written by write_case, in emission order.
const std::vector<std::string>& case_files();

/// Text of one case file (without writing it).
std::string render_case_file(std::string_view relative_path, const drag::Scenario& scenario,
                             const drag::FluidProps& fluid, const TurbulenceIC& ic);

/// STL resolution used for constant/triSurface/hull.stl.
inline constexpr int kCaseStlAxial = 200;
inline constexpr int kCaseStlCirc = 64;

/// Emits the case tree under `dir`. Identical inputs rewrite identical bytes.
/// Throws std::runtime_error when the directory cannot be written.
void write_case(const std::filesystem::path& dir, const HullProfile& profile,
                const drag::Scenario& scenario, const drag::FluidProps& fluid,
                const TurbulenceIC& ic);

struct ForceSample {
  double time;
  double fx;
};

struct ForceLog {
  std::vector<ForceSample> history;
  double final_drag;
  std::vector<std::string> malformed;  // "line N: text"
};

/// Parses `time Fx Fy Fz ...` rows ('#' lines are comments, parentheses are
/// ignored). Final drag is the mean Fx over the trailing 20 % of samples.
/// Throws std::runtime_error when no data row is present.
ForceLog parse_force_log(std::string_view text);

/// Location of the force log the case's function object writes.
std::filesystem::path force_log_path(const std::filesystem::path& case_dir);

}  // namespace hullopt::foam
