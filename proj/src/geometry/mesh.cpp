#include "hullopt/geometry.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <numbers>
#include <stdexcept>

namespace hullopt {

namespace {

using Vec3f = std::array<float, 3>;

constexpr std::size_t kStlHeaderBytes = 80;
constexpr std::size_t kStlTriangleBytes = 50;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= std::uint32_t(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

float get_f32(std::string_view in, std::size_t at) { return std::bit_cast<float>(get_u32(in, at)); }

Vec3f unit_normal(const Vec3f& a, const Vec3f& b, const Vec3f& c) {
  const double ux = double(b[0]) - a[0], uy = double(b[1]) - a[1], uz = double(b[2]) - a[2];
  const double vx = double(c[0]) - a[0], vy = double(c[1]) - a[1], vz = double(c[2]) - a[2];
  const double nx = uy * vz - uz * vy;
  const double ny = uz * vx - ux * vz;
  const double nz = ux * vy - uy * vx;
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (len == 0.0) return {0.0f, 0.0f, 0.0f};
  return {float(nx / len), float(ny / len), float(nz / len)};
}

class StlBuilder {
 public:
  void add(const Vec3f& a, const Vec3f& b, const Vec3f& c) {
    // Collapsed rings (zero radius) produce slivers with repeated vertices; skip them.
    if (a == b || b == c || a == c) return;
    const Vec3f n = unit_normal(a, b, c);
    for (float f : n) put_f32(body_, f);
    for (const Vec3f* v : {&a, &b, &c}) {
      for (float f : *v) put_f32(body_, f);
    }
    body_.push_back('\0');
    body_.push_back('\0');
    ++count_;
  }

  std::string finish() const {
    std::string out = "hullopt binary STL: axisymmetric hull";
    out.resize(kStlHeaderBytes, ' ');
    put_u32(out, count_);
    out += body_;
    return out;
  }

 private:
  std::string body_;
  std::uint32_t count_ = 0;
};

}  // namespace

std::string export_stl(const HullProfile& profile, int n_axial, int n_circ) {
  if (n_axial < 2) throw std::invalid_argument("export_stl: n_axial must be >= 2");
  if (n_circ < 3) throw std::invalid_argument("export_stl: n_circ must be >= 3");

  const double x0 = profile.front();
  const double len = profile.length();
  const auto ring_count = static_cast<std::size_t>(n_axial - 1);
  const auto nc = static_cast<std::size_t>(n_circ);

  std::vector<std::vector<Vec3f>> rings(ring_count, std::vector<Vec3f>(nc));
  for (std::size_t k = 0; k < ring_count; ++k) {
    const double x = x0 + len * double(k + 1) / double(n_axial);
    const double r = profile.radius_at(x);
    for (std::size_t j = 0; j < nc; ++j) {
      const double theta = 2.0 * std::numbers::pi * double(j) / double(nc);
      rings[k][j] = {float(x), float(r * std::cos(theta)), float(r * std::sin(theta))};
    }
  }
  const Vec3f nose_tip{float(x0), 0.0f, 0.0f};
  const Vec3f tail_tip{float(profile.back()), 0.0f, 0.0f};

  StlBuilder stl;
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t jn = (j + 1) % nc;
    stl.add(nose_tip, rings.front()[jn], rings.front()[j]);
  }
  for (std::size_t k = 0; k + 1 < ring_count; ++k) {
    for (std::size_t j = 0; j < nc; ++j) {
      const std::size_t jn = (j + 1) % nc;
      const Vec3f& a = rings[k][j];
      const Vec3f& b = rings[k][jn];
      const Vec3f& c = rings[k + 1][j];
      const Vec3f& d = rings[k + 1][jn];
      stl.add(a, b, c);
      stl.add(b, d, c);
    }
  }
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t jn = (j + 1) % nc;
    stl.add(tail_tip, rings.back()[j], rings.back()[jn]);
  }
  return stl.finish();
}

std::vector<StlTriangle> parse_binary_stl(std::string_view bytes) {
  if (bytes.size() < kStlHeaderBytes + 4) throw std::runtime_error("STL blob shorter than header");
  const std::uint32_t count = get_u32(bytes, kStlHeaderBytes);
  const std::size_t expected = kStlHeaderBytes + 4 + std::size_t(count) * kStlTriangleBytes;
  if (bytes.size() != expected) {
    throw std::runtime_error("STL triangle count " + std::to_string(count) +
                             " disagrees with payload of " + std::to_string(bytes.size()) +
                             " bytes");
  }
  std::vector<StlTriangle> tris(count);
  std::size_t at = kStlHeaderBytes + 4;
  for (auto& t : tris) {
    for (auto& f : t.normal) {
      f = get_f32(bytes, at);
      at += 4;
    }
    for (auto& v : t.vertices) {
      for (auto& f : v) {
        f = get_f32(bytes, at);
        at += 4;
      }
    }
    at += 2;
  }
  return tris;
}

bool stl_is_watertight(std::string_view bytes) {
  const auto tris = parse_binary_stl(bytes);
  if (tris.empty()) return false;
  std::map<std::pair<Vec3f, Vec3f>, int> directed;
  for (const auto& t : tris) {
    for (int e = 0; e < 3; ++e) {
      ++directed[{t.vertices[e], t.vertices[(e + 1) % 3]}];
    }
  }
  for (const auto& [edge, n] : directed) {
    if (n != 1) return false;
    const auto twin = directed.find({edge.second, edge.first});
    if (twin == directed.end() || twin->second != 1) return false;
  }
  return true;
}

}  // namespace hullopt
