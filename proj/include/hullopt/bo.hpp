#pragma once

// Sequential Bayesian optimization with a lower-confidence-bound acquisition
// and the GP-UCB exploration schedule beta_t = sqrt(v * tau_t),
// tau_t = 2 log(t^(d/2 + 2) pi^2 / (3 delta)).

#include "hullopt/geometry.hpp"
#include "hullopt/gp.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hullopt::bo {

/// Drag recorded for evaluations that failed; such points never enter the GP.
inline constexpr double kFailureSentinel = 1e9;

struct BoConfig {
  int budget = 100;
  int n_init = 10;
  double delta = 0.1;
  double v = 1.0;
  std::uint64_t seed = 0;
  Bounds bounds;

  int n_random_candidates = 2048;
  int n_local_candidates = 256;
  double noise_variance = gp::kDefaultNoiseVariance;
  bool optimize_hyperparams = true;
  int gp_restarts = 16;

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

struct TraceRecord {
  int t = 0;
  std::vector<double> x;
  double drag = 0.0;
  double best = 0.0;
  double beta = 0.0;  // 0 for the initial design
  double acq = 0.0;   // 0 for the initial design

  bool failed() const { return drag >= kFailureSentinel; }
  bool operator==(const TraceRecord&) const = default;
};

struct Trace {
  std::vector<TraceRecord> records;

  /// Record holding the lowest drag (first on ties).
  const TraceRecord& incumbent() const;
  bool operator==(const Trace&) const = default;
};

/// Objective: returns the drag for a point, or a non-finite value / throws
/// to signal a failed evaluation.
using Objective = std::function<double(std::span<const double>)>;

double beta_schedule(int t, int dim, double delta, double v);

inline double lcb(double mean, double std, double beta) { return mean - beta * std; }

struct Proposal {
  std::vector<double> x;
  double acq;  // LCB in output units
};

/// Minimizes LCB over the box: uniform candidates plus Gaussian
/// perturbations of `incumbent` (skipped when empty), refined by a
/// coordinate pattern search from the best candidate.
Proposal propose_next(const gp::GpModel& model, const Bounds& bounds, double beta,
                      std::mt19937_64& rng, std::span<const double> incumbent,
                      int n_random = 2048, int n_local = 256);

/// n points of a Latin hypercube in the box, one stratum per dimension each.
std::vector<std::vector<double>> latin_hypercube(int n, const Bounds& bounds,
                                                 std::mt19937_64& rng);

/// Throws std::runtime_error when every initial-design evaluation fails.
Trace optimize(const Objective& objective, const BoConfig& config);

struct Regret {
  double simple;
  double cumulative;
};

Regret regret(const Trace& trace, double f_star);

/// One JSON object per line: {"t":..,"x":[..],"drag":..,"best":..,"beta":..,"acq":..}.
std::string trace_to_jsonl(const Trace& trace);
Trace trace_from_jsonl(std::string_view text);

}  // namespace hullopt::bo
