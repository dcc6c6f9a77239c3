#include "hullopt/format.hpp"
#include "hullopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hullopt {

namespace {

// Fritsch-Carlson monotone slopes for a strictly increasing knot set.
std::vector<double> monotone_slopes(const std::vector<HullProfile::Knot>& k) {
  const std::size_t n = k.size();
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    secant[i] = (k[i + 1].r - k[i].r) / (k[i + 1].x - k[i].x);
  }

  std::vector<double> m(n);
  m.front() = secant.front();
  m.back() = secant.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    m[i] = (secant[i - 1] * secant[i] <= 0.0) ? 0.0 : 0.5 * (secant[i - 1] + secant[i]);
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (secant[i] == 0.0) {
      m[i] = 0.0;
      m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / secant[i];
    const double b = m[i + 1] / secant[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m[i] = tau * a * secant[i];
      m[i + 1] = tau * b * secant[i];
    }
  }
  return m;
}

}  // namespace

HullProfile HullProfile::from_design(const DesignVector& design) {
  const auto check = validate_design(design);
  if (!check.ok()) throw std::invalid_argument(check.message());

  const double nose = design.nose_length;
  const double tail = design.tail_length();
  const auto radius = [&](std::size_t i) {
    return std::clamp(0.5 * design.control_diameters[i], 0.0, kMaxRadius);
  };

  std::vector<Knot> knots;
  knots.reserve(9);
  knots.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i) knots.push_back({nose * 0.25 * double(i + 1), radius(i)});
  knots.push_back({nose, kMaxRadius});
  for (std::size_t i = 0; i < 3; ++i) {
    knots.push_back({nose + tail * 0.25 * double(i + 1), radius(i + 3)});
  }
  knots.push_back({kHullLength, 0.0});
  return from_knots(std::move(knots), nose);
}

HullProfile HullProfile::from_knots(std::vector<Knot> knots, double nose_length) {
  if (knots.size() < 2) throw std::invalid_argument("profile needs at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].r >= 0.0) || !std::isfinite(knots[i].r) || !std::isfinite(knots[i].x)) {
      throw std::invalid_argument("knot radius must be finite and non-negative");
    }
    if (i > 0 && !(knots[i].x > knots[i - 1].x)) {
      throw std::invalid_argument("knot stations must be strictly increasing");
    }
  }
  HullProfile p;
  p.slopes_ = monotone_slopes(knots);
  p.knots_ = std::move(knots);
  p.nose_length_ = nose_length;
  return p;
}

std::size_t HullProfile::segment_of(double x) const {
  if (!(x >= front() && x <= back())) {
    throw std::domain_error("axial station " + format_sig9(x) + " outside hull [" +
                            format_sig9(front()) + ", " + format_sig9(back()) + "]");
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - knots_.begin() - 1, 0));
  return std::min(idx, knots_.size() - 2);
}

double HullProfile::radius_at(double x) const {
  const std::size_t i = segment_of(x);
  const Knot& k0 = knots_[i];
  const Knot& k1 = knots_[i + 1];
  const double m0 = slopes_[i];
  const double m1 = slopes_[i + 1];
  if (k0.r == k1.r && m0 == 0.0 && m1 == 0.0) return k0.r;

  const double h = k1.x - k0.x;
  const double t = (x - k0.x) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  const double r = h00 * k0.r + h10 * h * m0 + h01 * k1.r + h11 * h * m1;
  // The limited slopes keep the exact cubic inside the knot range; clamp away rounding.
  return std::clamp(r, std::min(k0.r, k1.r), std::max(k0.r, k1.r));
}

double HullProfile::slope_at(double x) const {
  const std::size_t i = segment_of(x);
  const Knot& k0 = knots_[i];
  const Knot& k1 = knots_[i + 1];
  const double m0 = slopes_[i];
  const double m1 = slopes_[i + 1];
  if (k0.r == k1.r && m0 == 0.0 && m1 == 0.0) return 0.0;

  const double h = k1.x - k0.x;
  const double t = (x - k0.x) / h;
  const double t2 = t * t;
  const double d00 = 6.0 * t2 - 6.0 * t;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = -6.0 * t2 + 6.0 * t;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return (d00 * k0.r + d01 * k1.r) / h + d10 * m0 + d11 * m1;
}

double HullProfile::max_knot_radius() const {
  double m = 0.0;
  for (const auto& k : knots_) m = std::max(m, k.r);
  return m;
}

std::vector<QuadratureNode> midpoint_nodes(const HullProfile& profile, int stations) {
  const auto knots = profile.knots();
  const std::size_t segments = knots.size() - 1;
  if (stations < int(segments)) {
    throw std::invalid_argument("quadrature needs at least one station per knot segment (" +
                                std::to_string(segments) + ")");
  }
  std::vector<QuadratureNode> nodes;
  nodes.reserve(std::size_t(stations));
  const std::size_t base = std::size_t(stations) / segments;
  const std::size_t extra = std::size_t(stations) % segments;
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t m = base + (s < extra ? 1 : 0);
    const double x0 = knots[s].x;
    const double h = (knots[s + 1].x - x0) / double(m);
    for (std::size_t i = 0; i < m; ++i) nodes.push_back({x0 + (double(i) + 0.5) * h, h});
  }
  return nodes;
}

double wetted_area(const HullProfile& profile, int stations) {
  double sum = 0.0;
  for (const auto& node : midpoint_nodes(profile, stations)) {
    const double r = profile.radius_at(node.x);
    const double s = profile.slope_at(node.x);
    sum += r * std::sqrt(1.0 + s * s) * node.weight;
  }
  return 2.0 * std::numbers::pi * sum;
}

double volume(const HullProfile& profile, int stations) {
  double sum = 0.0;
  for (const auto& node : midpoint_nodes(profile, stations)) {
    const double r = profile.radius_at(node.x);
    sum += r * r * node.weight;
  }
  return std::numbers::pi * sum;
}

std::string export_profile_csv(const HullProfile& profile, int samples) {
  if (samples < 2) throw std::invalid_argument("profile CSV needs at least two samples");
  std::string out = "x,r\n";
  for (int i = 0; i < samples; ++i) {
    // Pin the last sample to the tail so rounding never leaves the domain.
    const double x = (i == samples - 1)
                         ? profile.back()
                         : profile.front() + profile.length() * double(i) / double(samples - 1);
    out += format_sig9(x);
    out += ',';
    out += format_sig9(profile.radius_at(x));
    out += '\n';
  }
  return out;
}

}  // namespace hullopt
