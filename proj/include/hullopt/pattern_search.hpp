#pragma once

// Box-constrained compass (coordinate pattern) search used both for GP
// hyperparameter fitting and for minimizing the acquisition function.

#include <functional>
#include <span>
#include <vector>

namespace hullopt {

struct PatternSearchOptions {
  /// Initial step per coordinate; halved after a sweep with no improvement.
  std::vector<double> initial_step;
  /// Stop once every step has shrunk below initial_step * min_step_ratio.
  double min_step_ratio = 1e-3;
  int max_evals = 1000;
};

struct PatternSearchResult {
  std::vector<double> x;
  double value;
  int evals;
};

/// Minimizes `f` starting from (x0, f0) with moves clipped to [lo, hi].
/// A move is accepted only on strict improvement, so the result is never
/// worse than the start.
PatternSearchResult pattern_search(const std::function<double(std::span<const double>)>& f,
                                   std::vector<double> x0, double f0,
                                   std::span<const double> lo, std::span<const double> hi,
                                   const PatternSearchOptions& options);

}  // namespace hullopt
