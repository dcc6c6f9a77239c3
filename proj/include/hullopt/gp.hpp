#pragma once

// Gaussian-process regression surrogate with a Matern 5/2 ARD kernel.
//
// Inputs are min-max normalized to the unit cube using the design-space
// bounds and outputs are z-scored; the prior mean is zero on the
// standardized scale. The Gram matrix K + (noise + jitter) I is factorized
// with a Cholesky decomposition; jitter escalates geometrically from 1e-8 to
// 1e-4 if the plain factorization fails.

#include "hullopt/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hullopt::gp {

using Point = std::vector<double>;

inline constexpr double kMinLengthscale = 0.05;
inline constexpr double kMaxLengthscale = 10.0;
inline constexpr double kMinSignalVariance = 1e-2;
inline constexpr double kMaxSignalVariance = 1e2;
inline constexpr double kMinNoiseVariance = 1e-8;
inline constexpr double kMaxNoiseVariance = 1e-1;
inline constexpr double kDefaultNoiseVariance = 1e-6;

struct KernelParams {
  double signal_variance = 1.0;
  std::vector<double> lengthscales;  // unit-cube units, one per dimension
  double noise_variance = kDefaultNoiseVariance;

  static KernelParams isotropic(std::size_t dim, double lengthscale = 0.5,
                                double signal_variance = 1.0,
                                double noise_variance = kDefaultNoiseVariance);

  /// Throws std::invalid_argument when any value is non-positive or outside
  /// the documented bounds.
  void validate() const;

  bool operator==(const KernelParams&) const = default;
};

/// Raised when the Gram matrix stays indefinite after the full jitter ladder.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k(a, b) for unit-cube points; scalar reference path.
double kernel_eval(const KernelParams& params, std::span<const double> a,
                   std::span<const double> b);

struct FitOptions {
  bool optimize_hyperparams = true;
  bool optimize_noise = false;
  std::uint64_t seed = 0;
  int restarts = 16;
  /// Per-start cap on likelihood evaluations in the pattern search.
  int max_evals_per_start = 120;
};

struct Prediction {
  double mean;
  double std;
};

class GpModel {
 public:
  /// Fits on raw inputs inside `bounds`. `initial` seeds the hyperparameter
  /// search (start 0) or is used verbatim when optimization is off.
  /// Throws std::invalid_argument on shape errors or duplicate rows and
  /// NotPositiveDefinite when factorization fails.
  static GpModel fit(std::span<const Point> inputs, std::span<const double> outputs,
                     const Bounds& bounds, const KernelParams& initial,
                     const FitOptions& options = {});

  /// Posterior of the latent function in output units.
  Prediction posterior(std::span<const double> x) const;

  /// Posterior on the standardized scale for a unit-cube point.
  Prediction posterior_standardized(std::span<const double> unit_x) const;

  double log_marginal_likelihood() const { return log_marginal_likelihood_; }

  const KernelParams& params() const { return params_; }
  const Bounds& bounds() const { return bounds_; }
  double jitter() const { return jitter_; }
  double output_mean() const { return y_mean_; }
  double output_scale() const { return y_scale_; }
  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

  /// Maps a raw point into the unit cube of the model's bounds.
  Point normalize(std::span<const double> x) const;

  /// Index of the lowest observed output (first on ties).
  std::size_t best_index() const { return best_index_; }

 private:
  GpModel() = default;

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  Bounds bounds_;
  std::vector<double> columns_;  // dim_ runs of n_ unit-cube coordinates
  std::vector<double> y_std_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  KernelParams params_;
  std::vector<double> inv_lengthscales_;
  std::vector<double> chol_;  // n_ x n_ lower triangle, row-major
  std::vector<double> alpha_;
  double jitter_ = 0.0;
  double log_marginal_likelihood_ = 0.0;
  std::size_t best_index_ = 0;
};

}  // namespace hullopt::gp
