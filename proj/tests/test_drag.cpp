#include "doctest.h"
#include "test_util.hpp"
#include "witness.hpp"

#include "hullopt/drag.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

using namespace hullopt;
using namespace hullopt::drag;
using hullopt::testing::random_design;
using hullopt::testing::uniform_design;

namespace {

const double kVelocities[] = {1.0, 2.5, 5.0, 7.5, 10.0};
const double kIntensities[] = {0.1, 2.0, 5.0, 10.0, 20.0};
constexpr double kNu = 1.004e-6;

Scenario random_scenario(std::mt19937_64& rng) {
  return {std::uniform_real_distribution<double>(0.5, 12.0)(rng),
          std::uniform_real_distribution<double>(0.05, 25.0)(rng)};
}

}  // namespace

TEST_CASE("reynolds examples") {
  CHECK(std::abs(reynolds(1.0, 1.0, kNu) - 9.9602e5) <= 1.0 + 0.5e-4 * 9.9602e5);
  CHECK(reynolds(1.0, 1.0, kNu) == doctest::Approx(996015.93625498).epsilon(1e-12));
  CHECK(reynolds(10.0, 1.0, kNu) == doctest::Approx(9960159.3625498).epsilon(1e-12));
}

TEST_CASE("transition examples") {
  CHECK(transition_x(1.0, 0.1, kNu) == 1.0);
  const double re_crit = 5e5 + 4.5e6 * std::exp(-0.1);
  CHECK(std::abs(re_crit - 4.57176e6) < 10.0);
  CHECK(std::abs(transition_x(10.0, 20.0, kNu) - 0.050200) < 1e-6);
  CHECK(transition_x(10.0, 20.0, kNu) == doctest::Approx(0.0502000009).epsilon(1e-9));

  for (double u : kVelocities) {
    double prev = 2.0;
    for (double i : kIntensities) {
      const double x = transition_x(u, i, kNu);
      CHECK(x <= prev);
      prev = x;
    }
  }
  for (double i : kIntensities) {
    double prev = 2.0;
    for (double u : kVelocities) {
      const double x = transition_x(u, i, kNu);
      CHECK(x <= prev);
      prev = x;
    }
  }
}

TEST_CASE("skin friction examples") {
  CHECK(local_cf(1e6, Regime::Laminar) == doctest::Approx(6.64e-4).epsilon(1e-12));
  CHECK(local_cf(1e6, Regime::Turbulent) == doctest::Approx(0.003735267479322744).epsilon(1e-12));
  CHECK(std::abs(local_cf(1e6, Regime::Turbulent) - 3.7352e-3) < 1e-7);
  CHECK(local_cf(1e-12, Regime::Laminar) == 0.05);
  CHECK(local_cf(1e-12, Regime::Turbulent) == 0.05);
  CHECK(local_cf(0.0, Regime::Laminar) == 0.05);
}

TEST_CASE("form factor examples") {
  CHECK(form_factor(0.2, 1.0) == doctest::Approx(0.19016407864998744).epsilon(1e-13));
  CHECK(std::abs(form_factor(0.2, 1.0) - 0.190164) < 1e-6);
  CHECK(form_factor(0.0, 1.0) == 0.0);
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double f = form_factor(0.01 * i, 1.0);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("breakdown is self-consistent") {
  const auto b = evaluate_drag(uniform_design(0.1, 0.4), {5.0, 5.0});
  CHECK(b.total == b.friction + b.form + b.separation);
  CHECK(b.form == doctest::Approx(form_factor(0.2, 1.0) * b.friction).epsilon(1e-14));
  CHECK(b.reynolds_L == doctest::Approx(reynolds(5.0, 1.0, kNu)));
  const std::string json = breakdown_to_json(b);
  CHECK(json.rfind("{\"friction\":", 0) == 0);
  CHECK(json.find("\"total\":") != std::string::npos);
}

TEST_CASE("invalid inputs are rejected") {
  auto bad = uniform_design(0.1, 0.4);
  bad.control_diameters[0] = 0.3;
  CHECK_THROWS_AS(evaluate_drag(bad, {5.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_drag(uniform_design(0.1, 0.4), {0.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_drag(uniform_design(0.1, 0.4), {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_drag(uniform_design(0.1, 0.4), {1.0, 100.0}), std::invalid_argument);
  FluidProps f;
  f.density = 0.0;
  CHECK_THROWS_AS(evaluate_drag(uniform_design(0.1, 0.4), {1.0, 5.0}, f), std::invalid_argument);
}

TEST_CASE("spike design is small, positive and separation dominated") {
  const auto d = uniform_design(0.0, 0.5);
  for (double u : kVelocities) {
    const auto coarse = evaluate_drag(d, {u, 5.0}, {}, 200);
    const auto fine = evaluate_drag(d, {u, 5.0}, {}, 2000);
    CHECK(coarse.total > 0.0);
    CHECK(coarse.separation > coarse.friction + coarse.form);
    CHECK(std::abs(coarse.total - fine.total) / fine.total < 0.01);
  }
}

TEST_CASE("property: components are non-negative") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const auto b = evaluate_drag(random_design(rng), random_scenario(rng));
    CHECK(b.friction >= 0.0);
    CHECK(b.form >= 0.0);
    CHECK(b.separation >= 0.0);
    CHECK(b.total >= 0.0);
    CHECK(b.transition_x >= 0.0);
    CHECK(b.transition_x <= 1.0);
  }
}

TEST_CASE("property: station refinement changes the total by under 1%") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const auto d = random_design(rng);
    const auto s = random_scenario(rng);
    const double coarse = evaluate_drag(d, s, {}, 200).total;
    const double fine = evaluate_drag(d, s, {}, 2000).total;
    CHECK(std::abs(coarse - fine) / fine < 0.01);
  }
}

TEST_CASE("property: monotone in velocity and intensity") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 50; ++i) {
    const auto d = random_design(rng);
    double prev = 0.0;
    for (double u : kVelocities) {
      const double t = evaluate_drag(d, {u, 20.0}).total;
      CHECK(t > prev);
      prev = t;
    }
    prev = 0.0;
    for (double in : kIntensities) {
      const double t = evaluate_drag(d, {5.0, in}).total;
      CHECK(t >= prev);
      prev = t;
    }
  }
}

TEST_CASE("scenario-coupling witness flips its drag ordering") {
  const auto a = testing::witness_a();
  const auto b = testing::witness_b();
  const Scenario calm{1.0, 0.1};
  const Scenario rough{10.0, 20.0};
  CHECK(evaluate_drag(a, calm).total < evaluate_drag(b, calm).total);
  CHECK(evaluate_drag(a, rough).total > evaluate_drag(b, rough).total);
  CHECK(evaluate_drag(a, calm).total == doctest::Approx(0.596657696).epsilon(1e-8));
  CHECK(evaluate_drag(b, rough).total == doctest::Approx(93.6505078).epsilon(1e-8));
}

TEST_CASE("evaluation is a pure function") {
  const auto d = testing::witness_a();
  const auto b1 = evaluate_drag(d, {7.5, 10.0});
  const auto b2 = evaluate_drag(d, {7.5, 10.0});
  CHECK(b1.total == b2.total);
  CHECK(b1.friction == b2.friction);
}
