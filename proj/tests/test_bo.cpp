#include "doctest.h"

#include "hullopt/bo.hpp"
#include "hullopt/pattern_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace hullopt;
using namespace hullopt::bo;

namespace {

Bounds unit_box(std::size_t dim) { return Bounds(dim, {0.0, 1.0}); }

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += (v - 0.3) * (v - 0.3);
  return s;
}

BoConfig sphere_config(std::uint64_t seed, int budget) {
  BoConfig c;
  c.bounds = unit_box(7);
  c.seed = seed;
  c.budget = budget;
  return c;
}

gp::GpModel bowl_model(std::mt19937_64& rng, const Bounds& b, int n, double scale) {
  std::vector<gp::Point> xs;
  std::vector<double> ys;
  for (int i = 0; i < n; ++i) {
    gp::Point p(b.size());
    double s = 0.0;
    for (std::size_t d = 0; d < b.size(); ++d) {
      p[d] = std::uniform_real_distribution<double>(b[d].first, b[d].second)(rng);
      const double mid = 0.5 * (b[d].first + b[d].second);
      const double u = (p[d] - mid) / (b[d].second - b[d].first);
      s += u * u;
    }
    xs.push_back(p);
    ys.push_back(scale * s);
  }
  gp::FitOptions fixed;
  fixed.optimize_hyperparams = false;
  return gp::GpModel::fit(xs, ys, b, gp::KernelParams::isotropic(b.size(), 0.5), fixed);
}

}  // namespace

TEST_CASE("beta schedule values") {
  CHECK(beta_schedule(1, 7, 0.1, 1.0) == doctest::Approx(2.6432678925998916).epsilon(1e-13));
  CHECK(beta_schedule(10, 7, 0.1, 1.0) == doctest::Approx(5.684654886181216).epsilon(1e-13));
  const double tau1 = std::pow(beta_schedule(1, 7, 0.1, 1.0), 2);
  CHECK(tau1 == doctest::Approx(6.9868651520494724).epsilon(1e-13));
  CHECK(beta_schedule(1, 7, 0.1, 4.0) == doctest::Approx(2.0 * 2.6432678925998916).epsilon(1e-13));
}

TEST_CASE("beta schedule is monotone in t") {
  double prev = 0.0;
  for (int t = 1; t <= 1000; ++t) {
    const double b = beta_schedule(t, 7, 0.1, 1.0);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("beta schedule domain errors") {
  CHECK_THROWS_AS(beta_schedule(0, 7, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_schedule(1, 0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_schedule(1, 7, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_schedule(1, 7, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_schedule(1, 7, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("lcb examples") {
  CHECK(lcb(3.0, 0.7, 0.0) == 3.0);
  CHECK(lcb(3.0, 0.0, 5.0) == 3.0);
  CHECK(std::abs(lcb(2.0, 0.5, 2.64330) - 0.678350) < 1e-6);
}

TEST_CASE("BoConfig validation") {
  auto c = sphere_config(0, 100);
  CHECK_NOTHROW(c.validate());
  c.n_init = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = sphere_config(0, 10);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = sphere_config(0, 100);
  c.delta = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = sphere_config(0, 100);
  c.bounds[3] = {1.0, 1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("latin hypercube stratification") {
  std::mt19937_64 rng(4);
  const Bounds b{{0.0, 0.2}, {0.01, 0.9}, {-1.0, 1.0}};
  const int n = 10;
  const auto pts = latin_hypercube(n, b, rng);
  REQUIRE(pts.size() == std::size_t(n));
  for (std::size_t d = 0; d < b.size(); ++d) {
    std::vector<int> hits(n, 0);
    for (const auto& p : pts) {
      CHECK(p[d] >= b[d].first);
      CHECK(p[d] <= b[d].second);
      const int s = std::min(n - 1, int((p[d] - b[d].first) / (b[d].second - b[d].first) * n));
      ++hits[std::size_t(s)];
    }
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("pattern search finds a quadratic minimum and never worsens") {
  const auto f = [](std::span<const double> x) {
    return (x[0] - 0.3) * (x[0] - 0.3) + 2.0 * (x[1] + 0.2) * (x[1] + 0.2);
  };
  std::vector<double> x0{0.9, 0.9}, lo{-1.0, -1.0}, hi{1.0, 1.0};
  PatternSearchOptions o;
  o.initial_step = {0.25, 0.25};
  o.min_step_ratio = 1e-6;
  o.max_evals = 10000;
  const auto r = pattern_search(f, x0, f(x0), lo, hi, o);
  CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-0.2).epsilon(1e-5));
  CHECK(r.value <= f(x0));
}

TEST_CASE("propose_next agrees with a brute-force posterior-mean argmin") {
  std::mt19937_64 rng(21);
  const Bounds b{{0.0, 2.0}, {-1.0, 1.0}};
  const auto model = bowl_model(rng, b, 25, 3.0);

  std::mt19937_64 brute(5);
  std::vector<double> best(2);
  double best_mean = 1e300;
  for (int i = 0; i < 100000; ++i) {
    std::vector<double> x{std::uniform_real_distribution<double>(0.0, 2.0)(brute),
                          std::uniform_real_distribution<double>(-1.0, 1.0)(brute)};
    const double m = model.posterior(x).mean;
    if (m < best_mean) {
      best_mean = m;
      best = x;
    }
  }
  std::mt19937_64 prng(9);
  const auto p = propose_next(model, b, 0.0, prng, {});
  const double du = (p.x[0] - best[0]) / 2.0;
  const double dv = (p.x[1] - best[1]) / 2.0;
  CHECK(std::sqrt(du * du + dv * dv) <= 0.02);
  CHECK(p.acq <= best_mean + 1e-9);
}

TEST_CASE("property: proposals stay inside the bounds") {
  std::mt19937_64 rng(22);
  const Bounds b = design_bounds();
  int outside = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto model = bowl_model(rng, b, 3 + i % 6, 1.0);
    const double beta = std::uniform_real_distribution<double>(0.0, 6.0)(rng);
    const auto p = propose_next(model, b, beta, rng, {}, 64, 0);
    for (std::size_t d = 0; d < b.size(); ++d) {
      if (p.x[d] < b[d].first || p.x[d] > b[d].second) ++outside;
    }
  }
  CHECK(outside == 0);
}

TEST_CASE("propose_next is deterministic and scale equivariant") {
  std::mt19937_64 rng(23);
  const Bounds b = unit_box(7);
  std::vector<gp::Point> xs;
  std::vector<double> ys;
  for (int i = 0; i < 15; ++i) {
    gp::Point p(7);
    for (auto& v : p) v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    ys.push_back(sphere(p) + 1.0);
    xs.push_back(p);
  }
  gp::FitOptions fixed;
  fixed.optimize_hyperparams = false;
  const auto params = gp::KernelParams::isotropic(7, 0.6, 1.3);
  const auto base = gp::GpModel::fit(xs, ys, b, params, fixed);

  std::mt19937_64 r1(77), r2(77);
  const auto p1 = propose_next(base, b, 2.0, r1, xs[base.best_index()]);
  const auto p2 = propose_next(base, b, 2.0, r2, xs[base.best_index()]);
  CHECK(p1.x == p2.x);
  CHECK(p1.acq == p2.acq);

  for (double c : {0.1, 10.0}) {
    std::vector<double> scaled = ys;
    for (auto& v : scaled) v *= c;
    const auto m = gp::GpModel::fit(xs, scaled, b, params, fixed);
    std::mt19937_64 r3(77);
    const auto p = propose_next(m, b, 2.0, r3, xs[m.best_index()]);
    for (std::size_t d = 0; d < 7; ++d) CHECK(p.x[d] == doctest::Approx(p1.x[d]).epsilon(1e-9));
    CHECK(p.acq == doctest::Approx(c * p1.acq).epsilon(1e-9));
  }
}

TEST_CASE("optimize on a constant objective") {
  auto c = sphere_config(3, 14);
  const auto trace = optimize([](std::span<const double>) { return 2.5; }, c);
  CHECK(trace.records.size() == 14);
  CHECK(trace.incumbent().drag == 2.5);
  for (const auto& r : trace.records) CHECK(r.best == 2.5);
}

TEST_CASE("optimize trace structure and determinism") {
  const auto c = sphere_config(5, 20);
  const auto t1 = optimize(sphere, c);
  const auto t2 = optimize(sphere, c);
  CHECK(trace_to_jsonl(t1) == trace_to_jsonl(t2));
  REQUIRE(t1.records.size() == 20);
  for (std::size_t i = 0; i < t1.records.size(); ++i) {
    const auto& r = t1.records[i];
    CHECK(r.t == int(i) + 1);
    CHECK(r.x.size() == 7);
    CHECK(r.drag == doctest::Approx(sphere(r.x)).epsilon(1e-15));
    if (i > 0) CHECK(r.best <= t1.records[i - 1].best);
    if (i < 10) {
      CHECK(r.beta == 0.0);
      CHECK(r.acq == 0.0);
    } else {
      CHECK(r.beta == doctest::Approx(beta_schedule(r.t, 7, 0.1, 1.0)));
    }
  }
  CHECK(t1.incumbent().drag == t1.records.back().best);
}

TEST_CASE("failed evaluations get the sentinel and are skipped") {
  auto c = sphere_config(6, 25);
  const auto objective = [](std::span<const double> x) -> double {
    if (x[0] > 0.7) throw std::runtime_error("degenerate");
    if (x[1] > 0.8) return std::nan("");
    return sphere(x);
  };
  const auto trace = optimize(objective, c);
  REQUIRE(trace.records.size() == 25);
  int failed = 0;
  for (const auto& r : trace.records) {
    if (r.x[0] > 0.7 || r.x[1] > 0.8) {
      CHECK(r.drag == kFailureSentinel);
      ++failed;
    } else {
      CHECK(r.drag == doctest::Approx(sphere(r.x)));
    }
  }
  CHECK(failed > 0);
  CHECK(trace.incumbent().drag < kFailureSentinel);

  CHECK_THROWS_AS(optimize([](std::span<const double>) -> double { throw std::runtime_error("x"); }, c),
                  std::runtime_error);
}

TEST_CASE("regret accounting") {
  Trace t;
  t.records = {{1, {0.0}, 3.0, 3.0, 0.0, 0.0}, {2, {0.1}, 1.0, 1.0, 0.0, 0.0},
               {3, {0.2}, 2.0, 1.0, 0.0, 0.0}};
  auto r = regret(t, 1.0);
  CHECK(r.simple == 0.0);
  CHECK(r.cumulative == 3.0);
  r = regret(t, 0.5);
  CHECK(r.cumulative >= r.simple);
  CHECK(r.simple >= 0.0);
  CHECK_THROWS(regret(t, std::nan("")));
}

TEST_CASE("trace JSON lines round trip") {
  const auto trace = optimize(sphere, sphere_config(8, 13));
  const auto text = trace_to_jsonl(trace);
  CHECK(text.rfind("{\"t\":1,\"x\":[", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 13);
  CHECK(trace_from_jsonl(text) == trace);
  CHECK_THROWS_AS(trace_from_jsonl("{\"t\":1}\n"), std::runtime_error);
}

TEST_CASE("property: average cumulative regret falls with the budget on the sphere") {
  double avg[3] = {0.0, 0.0, 0.0};
  const int horizons[3] = {25, 50, 100};
  const int seeds = 3;
  for (int s = 0; s < seeds; ++s) {
    const auto trace = optimize(sphere, sphere_config(std::uint64_t(100 + s), 100));
    for (int h = 0; h < 3; ++h) {
      Trace prefix;
      prefix.records.assign(trace.records.begin(), trace.records.begin() + horizons[h]);
      avg[h] += regret(prefix, 0.0).cumulative / horizons[h] / seeds;
    }
  }
  CHECK(avg[1] < avg[0]);
  CHECK(avg[2] < avg[1]);
}
