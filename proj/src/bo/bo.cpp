#include "hullopt/bo.hpp"

#include "hullopt/pattern_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hullopt::bo {

namespace {

constexpr double kLocalSpread = 0.05;  // fraction of each range
constexpr double kSearchStep = 0.05;
constexpr double kSearchStopStep = 1e-4;
constexpr int kSearchMaxEvals = 2000;

double safe_evaluate(const Objective& objective, std::span<const double> x) {
  double v;
  try {
    v = objective(x);
  } catch (const std::exception&) {
    return kFailureSentinel;
  }
  if (!std::isfinite(v) || v >= kFailureSentinel) return kFailureSentinel;
  return v;
}

bool near_duplicate(const std::vector<double>& a, const std::vector<double>& b,
                    const Bounds& bounds) {
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double range = bounds[d].second - bounds[d].first;
    if (std::abs(a[d] - b[d]) / range > 1e-12) return false;
  }
  return true;
}

}  // namespace

void BoConfig::validate() const {
  if (n_init < 2) throw std::invalid_argument("BoConfig: n_init must be >= 2");
  if (n_init >= budget) throw std::invalid_argument("BoConfig: n_init must be < budget");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("BoConfig: delta must be in (0,1)");
  if (!(v > 0.0)) throw std::invalid_argument("BoConfig: v must be > 0");
  if (bounds.empty()) throw std::invalid_argument("BoConfig: bounds must not be empty");
  for (const auto& [lo, hi] : bounds) {
    if (!(lo < hi)) throw std::invalid_argument("BoConfig: bound lo must be < hi");
  }
  if (n_random_candidates < 1) throw std::invalid_argument("BoConfig: need random candidates");
  if (n_local_candidates < 0) throw std::invalid_argument("BoConfig: n_local_candidates must be >= 0");
}

const TraceRecord& Trace::incumbent() const {
  if (records.empty()) throw std::logic_error("empty trace has no incumbent");
  return *std::min_element(records.begin(), records.end(),
                           [](const TraceRecord& a, const TraceRecord& b) { return a.drag < b.drag; });
}

double beta_schedule(int t, int dim, double delta, double v) {
  if (t < 1) throw std::invalid_argument("beta_schedule: t must be >= 1");
  if (dim < 1) throw std::invalid_argument("beta_schedule: dimension must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("beta_schedule: delta in (0,1)");
  if (!(v > 0.0)) throw std::invalid_argument("beta_schedule: v must be > 0");
  const double exponent = 0.5 * double(dim) + 2.0;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double tau = 2.0 * (exponent * std::log(double(t)) + std::log(pi2 / (3.0 * delta)));
  return std::sqrt(v * std::max(0.0, tau));
}

Proposal propose_next(const gp::GpModel& model, const Bounds& bounds, double beta,
                      std::mt19937_64& rng, std::span<const double> incumbent, int n_random,
                      int n_local) {
  const std::size_t dim = bounds.size();
  if (dim != model.dim()) throw std::invalid_argument("propose_next: bounds/model mismatch");

  // Search in the model's unit cube on the standardized scale; z-scoring is
  // a positive affine map so the argmin is the same as in drag units.
  const auto acquisition = [&](std::span<const double> u) {
    const auto p = model.posterior_standardized(u);
    return lcb(p.mean, p.std, beta);
  };

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, kLocalSpread);

  std::vector<double> best_u(dim);
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> u(dim);
  const auto consider = [&] {
    const double a = acquisition(u);
    if (a < best_value) {
      best_value = a;
      best_u = u;
    }
  };

  for (int c = 0; c < n_random; ++c) {
    for (auto& ui : u) ui = unit(rng);
    consider();
  }
  if (!incumbent.empty()) {
    const gp::Point centre = model.normalize(incumbent);
    for (int c = 0; c < n_local; ++c) {
      for (std::size_t d = 0; d < dim; ++d) u[d] = std::clamp(centre[d] + jitter(rng), 0.0, 1.0);
      consider();
    }
  }

  const std::vector<double> lo(dim, 0.0);
  const std::vector<double> hi(dim, 1.0);
  PatternSearchOptions ps;
  ps.initial_step.assign(dim, kSearchStep);
  ps.min_step_ratio = kSearchStopStep / kSearchStep;
  ps.max_evals = kSearchMaxEvals;
  const auto refined = pattern_search(acquisition, best_u, best_value, lo, hi, ps);

  Proposal out;
  out.x.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const auto [blo, bhi] = bounds[d];
    out.x[d] = std::clamp(blo + refined.x[d] * (bhi - blo), blo, bhi);
  }
  out.acq = model.output_mean() + model.output_scale() * refined.value;
  return out;
}

std::vector<std::vector<double>> latin_hypercube(int n, const Bounds& bounds,
                                                 std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("latin_hypercube: n must be >= 1");
  std::vector<std::vector<double>> pts(std::size_t(n), std::vector<double>(bounds.size()));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (std::size_t d = 0; d < bounds.size(); ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto [lo, hi] = bounds[d];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double frac = (double(perm[i]) + unit(rng)) / double(n);
      pts[i][d] = std::clamp(lo + frac * (hi - lo), lo, hi);
    }
  }
  return pts;
}

Trace optimize(const Objective& objective, const BoConfig& config) {
  config.validate();
  const Bounds& bounds = config.bounds;
  const int dim = int(bounds.size());
  std::mt19937_64 rng(config.seed);

  Trace trace;
  trace.records.reserve(std::size_t(config.budget));
  double best = kFailureSentinel;
  const auto record = [&](std::vector<double> x, double drag, double beta, double acq) {
    best = std::min(best, drag);
    trace.records.push_back({int(trace.records.size()) + 1, std::move(x), drag, best, beta, acq});
  };

  for (auto& x : latin_hypercube(config.n_init, bounds, rng)) {
    const double y = safe_evaluate(objective, x);
    record(std::move(x), y, 0.0, 0.0);
  }
  if (std::all_of(trace.records.begin(), trace.records.end(),
                  [](const TraceRecord& r) { return r.failed(); })) {
    throw std::runtime_error("all " + std::to_string(config.n_init) +
                             " initial-design evaluations failed");
  }

  gp::KernelParams params = gp::KernelParams::isotropic(bounds.size(), 0.5, 1.0,
                                                        config.noise_variance);
  gp::FitOptions fit_options;
  fit_options.optimize_hyperparams = config.optimize_hyperparams;
  fit_options.restarts = config.gp_restarts;

  std::vector<gp::Point> xs;
  std::vector<double> ys;
  for (int t = config.n_init + 1; t <= config.budget; ++t) {
    xs.clear();
    ys.clear();
    for (const auto& r : trace.records) {
      if (r.failed()) continue;
      const bool dup = std::any_of(xs.begin(), xs.end(),
                                   [&](const gp::Point& p) { return near_duplicate(p, r.x, bounds); });
      if (dup) continue;
      xs.push_back(r.x);
      ys.push_back(r.drag);
    }

    fit_options.seed = config.seed * 0x9E3779B97F4A7C15ull + std::uint64_t(t);
    const auto model = gp::GpModel::fit(xs, ys, bounds, params, fit_options);
    params = model.params();

    const double beta = beta_schedule(t, dim, config.delta, config.v);
    const auto proposal = propose_next(model, bounds, beta, rng, xs[model.best_index()],
                                       config.n_random_candidates, config.n_local_candidates);
    const double y = safe_evaluate(objective, proposal.x);
    record(proposal.x, y, beta, proposal.acq);
  }
  return trace;
}

Regret regret(const Trace& trace, double f_star) {
  if (!std::isfinite(f_star)) throw std::invalid_argument("regret: f_star must be finite");
  Regret r{0.0, 0.0};
  if (trace.records.empty()) return r;
  r.simple = trace.records.back().best - f_star;
  for (const auto& rec : trace.records) r.cumulative += rec.drag - f_star;
  return r;
}

}  // namespace hullopt::bo
