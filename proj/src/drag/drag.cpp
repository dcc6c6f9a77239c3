#include "hullopt/drag.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hullopt::drag {

void Scenario::validate() const {
  if (!(velocity > 0.0) || !std::isfinite(velocity)) {
    throw std::invalid_argument("scenario velocity must be > 0");
  }
  if (!(intensity_pct > 0.0 && intensity_pct < 100.0)) {
    throw std::invalid_argument("turbulence intensity must be in (0, 100) percent");
  }
}

void FluidProps::validate() const {
  if (!(density > 0.0) || !(kinematic_viscosity > 0.0)) {
    throw std::invalid_argument("fluid density and viscosity must be > 0");
  }
}

double reynolds(double velocity, double length, double kinematic_viscosity) {
  return velocity * length / kinematic_viscosity;
}

double transition_x(double velocity, double intensity_pct, double kinematic_viscosity,
                    double hull_length) {
  const double re_crit = 5e5 + 4.5e6 * std::exp(-intensity_pct);
  return std::clamp(re_crit * kinematic_viscosity / velocity, 0.0, hull_length);
}

double local_cf(double reynolds_x, Regime regime) {
  if (!(reynolds_x > 0.0)) return kMaxSkinFriction;
  const double cf = regime == Regime::Laminar ? 0.664 / std::sqrt(reynolds_x)
                                              : 0.0592 / std::pow(reynolds_x, 0.2);
  return std::min(cf, kMaxSkinFriction);
}

double form_factor(double max_diameter, double length) {
  const double ratio = max_diameter / length;
  return 1.5 * std::pow(ratio, 1.5) + 7.0 * ratio * ratio * ratio;
}

DragBreakdown evaluate_drag(const HullProfile& profile, const Scenario& scenario,
                            const FluidProps& fluid, int stations) {
  scenario.validate();
  fluid.validate();

  const double length = profile.length();
  const double u = scenario.velocity;
  const double nu = fluid.kinematic_viscosity;
  const double q = 0.5 * fluid.density * u * u;
  const double two_pi = 2.0 * std::numbers::pi;

  DragBreakdown b;
  b.reynolds_L = reynolds(u, length, nu);
  b.transition_x = transition_x(u, scenario.intensity_pct, nu, length);

  double friction = 0.0;
  double separation = 0.0;
  for (const auto& node : midpoint_nodes(profile, stations)) {
    const double s = node.x - profile.front();  // distance from the nose tip
    const double r = profile.radius_at(node.x);
    const double slope = profile.slope_at(node.x);
    const Regime regime = s < b.transition_x ? Regime::Laminar : Regime::Turbulent;
    friction += local_cf(reynolds(u, s, nu), regime) * two_pi * r *
                std::sqrt(1.0 + slope * slope) * node.weight;
    const double excess = std::max(0.0, std::abs(slope) - kSeparationSlope);
    separation += excess * excess * two_pi * r * node.weight;
  }
  friction *= q;
  separation *= q * kSeparationCoefficient;

  const double k_form = form_factor(2.0 * profile.max_knot_radius(), length);
  b.friction = friction;
  b.form = k_form * friction;
  b.separation = separation;
  b.total = b.friction + b.form + b.separation;
  return b;
}

DragBreakdown evaluate_drag(const DesignVector& design, const Scenario& scenario,
                            const FluidProps& fluid, int stations) {
  return evaluate_drag(HullProfile::from_design(design), scenario, fluid, stations);
}

std::string breakdown_to_json(const DragBreakdown& b) {
  nlohmann::ordered_json j;
  j["friction"] = b.friction;
  j["form"] = b.form;
  j["separation"] = b.separation;
  j["total"] = b.total;
  j["transition_x"] = b.transition_x;
  j["reynolds_L"] = b.reynolds_L;
  return j.dump();
}

}  // namespace hullopt::drag
