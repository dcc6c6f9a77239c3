#include "hullopt/geometry.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>

namespace hullopt {

std::array<double, kDesignDim> DesignVector::to_array() const {
  std::array<double, kDesignDim> out{};
  for (std::size_t i = 0; i < kNumControls; ++i) out[i] = control_diameters[i];
  out[kNumControls] = nose_length;
  return out;
}

DesignVector DesignVector::from_array(std::span<const double> values) {
  if (values.size() != kDesignDim) {
    throw std::invalid_argument("design vector needs 7 components, got " +
                                std::to_string(values.size()));
  }
  DesignVector d;
  for (std::size_t i = 0; i < kNumControls; ++i) d.control_diameters[i] = values[i];
  d.nose_length = values[kNumControls];
  return d;
}

Bounds design_bounds() {
  Bounds b(kDesignDim, {0.0, kMaxDiameter});
  b[kNumControls] = {kMinNoseLength, kMaxNoseLength};
  return b;
}

ValidationResult validate_design(const DesignVector& design) {
  ValidationResult result;
  const auto values = design.to_array();
  const auto bounds = design_bounds();
  for (std::size_t i = 0; i < kDesignDim; ++i) {
    const double v = values[i];
    const auto [lo, hi] = bounds[i];
    // NaN fails both comparisons; report it against the lower bound.
    if (!(v >= lo)) {
      result.violations.push_back({i, v, lo});
    } else if (!(v <= hi)) {
      result.violations.push_back({i, v, hi});
    }
  }
  return result;
}

std::string ValidationResult::message() const {
  if (ok()) return "valid design";
  std::ostringstream os;
  os << "invalid design:";
  for (const auto& v : violations) {
    os << " [" << (v.index < kNumControls ? "control_diameters[" + std::to_string(v.index) + "]"
                                          : std::string("nose_length"))
       << "=" << v.value << " violates bound " << v.bound << "]";
  }
  return os.str();
}

std::string design_to_json(const DesignVector& design) {
  nlohmann::ordered_json j;
  j["control_diameters"] = design.control_diameters;
  j["nose_length"] = design.nose_length;
  return j.dump();
}

DesignVector design_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("control_diameters") || !j.contains("nose_length")) {
    throw std::invalid_argument("design JSON needs control_diameters and nose_length");
  }
  const auto& cd = j.at("control_diameters");
  if (!cd.is_array() || cd.size() != kNumControls) {
    throw std::invalid_argument("control_diameters must hold exactly 6 numbers");
  }
  DesignVector d;
  for (std::size_t i = 0; i < kNumControls; ++i) d.control_diameters[i] = cd.at(i).get<double>();
  d.nose_length = j.at("nose_length").get<double>();
  return d;
}

}  // namespace hullopt
