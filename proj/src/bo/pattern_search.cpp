#include "hullopt/pattern_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace hullopt {

PatternSearchResult pattern_search(const std::function<double(std::span<const double>)>& f,
                                   std::vector<double> x0, double f0,
                                   std::span<const double> lo, std::span<const double> hi,
                                   const PatternSearchOptions& options) {
  const std::size_t dim = x0.size();
  if (lo.size() != dim || hi.size() != dim || options.initial_step.size() != dim) {
    throw std::invalid_argument("pattern_search: dimension mismatch");
  }

  PatternSearchResult best{std::move(x0), f0, 0};
  std::vector<double> step = options.initial_step;
  std::vector<double> trial = best.x;

  const auto converged = [&] {
    for (std::size_t i = 0; i < dim; ++i) {
      if (step[i] >= options.initial_step[i] * options.min_step_ratio) return false;
    }
    return true;
  };

  while (!converged() && best.evals < options.max_evals) {
    bool improved = false;
    for (std::size_t i = 0; i < dim && best.evals < options.max_evals; ++i) {
      for (const double sign : {1.0, -1.0}) {
        const double moved = std::clamp(best.x[i] + sign * step[i], lo[i], hi[i]);
        if (moved == best.x[i]) continue;
        trial = best.x;
        trial[i] = moved;
        const double v = f(trial);
        ++best.evals;
        if (v < best.value) {
          best.x = trial;
          best.value = v;
          improved = true;
          break;
        }
        if (best.evals >= options.max_evals) break;
      }
    }
    if (!improved) {
      for (double& s : step) s *= 0.5;
    }
  }
  return best;
}

}  // namespace hullopt
