#pragma once

// Deterministic strip-integration drag model of an axisymmetric hull:
// flat-plate skin friction with a turbulence-dependent laminar/turbulent
// transition, a body-of-revolution form factor, and a penalty for steep
// profile slopes standing in for separation pressure drag.

#include "hullopt/geometry.hpp"

namespace hullopt::drag {

struct Scenario {
  double velocity;       // m/s
  double intensity_pct;  // turbulence intensity, percent of mean flow speed

  void validate() const;
  bool operator==(const Scenario&) const = default;
};

struct FluidProps {
  double density = 998.2;                // kg/m^3, fresh water at 20 C
  double kinematic_viscosity = 1.004e-6;  // m^2/s

  void validate() const;
};

struct DragBreakdown {
  double friction = 0.0;    // N
  double form = 0.0;        // N
  double separation = 0.0;  // N
  double total = 0.0;       // N
  double transition_x = 0.0;
  double reynolds_L = 0.0;
};

enum class Regime { Laminar, Turbulent };

inline constexpr double kSeparationCoefficient = 2.0;
inline constexpr double kSeparationSlope = 0.3;
inline constexpr double kMaxSkinFriction = 0.05;

double reynolds(double velocity, double length, double kinematic_viscosity);

/// Re_crit = 5e5 + 4.5e6 exp(-I_pct); x_tr = clamp(Re_crit nu / U, 0, L).
double transition_x(double velocity, double intensity_pct, double kinematic_viscosity,
                    double hull_length = kHullLength);

/// Laminar 0.664 / sqrt(Re_x), turbulent 0.0592 / Re_x^0.2, capped at 0.05.
double local_cf(double reynolds_x, Regime regime);

/// 1.5 (D/L)^1.5 + 7 (D/L)^3.
double form_factor(double max_diameter, double length);

DragBreakdown evaluate_drag(const HullProfile& profile, const Scenario& scenario,
                            const FluidProps& fluid = {},
                            int stations = kDefaultQuadratureStations);

/// Throws std::invalid_argument for invalid designs.
DragBreakdown evaluate_drag(const DesignVector& design, const Scenario& scenario,
                            const FluidProps& fluid = {},
                            int stations = kDefaultQuadratureStations);

std::string breakdown_to_json(const DragBreakdown& b);

}  // namespace hullopt::drag
