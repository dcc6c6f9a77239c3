#pragma once

// Axisymmetric hull parametrization: a 7-D design vector (six control
// diameters plus the nose length) is turned into a monotone cubic Hermite
// radius curve r(x) on a 1 m body whose maximum diameter is pinned to 0.2 m
// at the nose/tail junction.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hullopt {

inline constexpr double kHullLength = 1.0;
inline constexpr double kMaxDiameter = 0.2;
inline constexpr double kMaxRadius = 0.5 * kMaxDiameter;
inline constexpr double kMinNoseLength = 0.01;
inline constexpr double kMaxNoseLength = 0.90;
inline constexpr std::size_t kNumControls = 6;
inline constexpr std::size_t kDesignDim = kNumControls + 1;

/// Box bounds, one (lo, hi) pair per dimension.
using Bounds = std::vector<std::pair<double, double>>;

struct DesignVector {
  std::array<double, kNumControls> control_diameters{};
  double nose_length = 0.5;

  double tail_length() const { return kHullLength - nose_length; }

  /// Packed as (d0..d5, nose_length), the optimizer's coordinate order.
  std::array<double, kDesignDim> to_array() const;
  static DesignVector from_array(std::span<const double> values);

  bool operator==(const DesignVector&) const = default;
};

/// Bounds of the design space in the to_array() coordinate order.
Bounds design_bounds();

struct BoundViolation {
  std::size_t index;  // 0-5 control diameters, 6 nose length
  double value;
  double bound;
};

struct ValidationResult {
  std::vector<BoundViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string message() const;
};

ValidationResult validate_design(const DesignVector& design);

/// Sampled radius curve of a body of revolution about the x axis.
///
/// Between knots the curve is a cubic Hermite segment with Fritsch-Carlson
/// limited slopes, so r(x) stays between the radii of the two bracketing
/// knots and value plus first derivative are continuous.
class HullProfile {
 public:
  struct Knot {
    double x;
    double r;
  };

  /// Rejects invalid designs with std::invalid_argument.
  static HullProfile from_design(const DesignVector& design);

  /// Arbitrary knot set (strictly increasing x, r >= 0). Used for synthetic
  /// shapes such as cylinders and cones.
  static HullProfile from_knots(std::vector<Knot> knots, double nose_length);

  /// Throws std::domain_error outside [front(), back()].
  double radius_at(double x) const;
  double slope_at(double x) const;

  std::span<const Knot> knots() const { return knots_; }
  std::span<const double> knot_slopes() const { return slopes_; }
  double nose_length() const { return nose_length_; }
  double front() const { return knots_.front().x; }
  double back() const { return knots_.back().x; }
  double length() const { return back() - front(); }
  double max_knot_radius() const;

 private:
  HullProfile() = default;
  std::size_t segment_of(double x) const;

  std::vector<Knot> knots_;
  std::vector<double> slopes_;
  double nose_length_ = 0.0;
};

inline HullProfile build_profile(const DesignVector& design) {
  return HullProfile::from_design(design);
}

inline constexpr int kDefaultQuadratureStations = 200;

struct QuadratureNode {
  double x;       // axial station
  double weight;  // station width
};

/// Composite midpoint rule aligned with the knot segments: the stations are
/// shared out as evenly as possible between segments (earlier segments take
/// the remainder) and placed at the midpoints of equal sub-intervals. Short
/// segments such as a 1 cm nose therefore stay resolved. For a two-knot
/// profile this is the plain uniform midpoint rule.
std::vector<QuadratureNode> midpoint_nodes(const HullProfile& profile, int stations);

/// Lateral surface area, midpoint rule over n stations.
double wetted_area(const HullProfile& profile, int stations = kDefaultQuadratureStations);
/// Enclosed volume, midpoint rule over n stations.
double volume(const HullProfile& profile, int stations = kDefaultQuadratureStations);

/// Binary STL of the closed surface of revolution. n_axial is the number of
/// axial intervals (n_axial - 1 interior rings), n_circ the points per ring;
/// both tips are closed with triangle fans on the axis.
std::string export_stl(const HullProfile& profile, int n_axial, int n_circ);

struct StlTriangle {
  std::array<float, 3> normal;
  std::array<std::array<float, 3>, 3> vertices;
};

/// Decodes a binary STL blob; throws std::runtime_error when the declared
/// triangle count disagrees with the payload size.
std::vector<StlTriangle> parse_binary_stl(std::string_view bytes);

/// True when every directed edge (by exact vertex coordinates) is matched by
/// exactly one edge running the opposite way, i.e. each edge is shared by
/// exactly two consistently oriented triangles.
bool stl_is_watertight(std::string_view bytes);

/// "x,r" header followed by n uniformly spaced samples, 9 significant digits.
std::string export_profile_csv(const HullProfile& profile, int samples);

/// Design JSON: {"control_diameters":[6 floats],"nose_length":f}.
std::string design_to_json(const DesignVector& design);
DesignVector design_from_json(const std::string& text);

}  // namespace hullopt
