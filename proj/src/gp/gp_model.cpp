#include "hullopt/gp.hpp"

#include "hullopt/pattern_search.hpp"
#include "hullopt/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

namespace hullopt::gp {

namespace {

constexpr double kDuplicateTolerance = 1e-12;
constexpr double kJitterLadder[] = {0.0, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};

struct Factorization {
  std::vector<double> chol;
  std::vector<double> alpha;
  double jitter = 0.0;
  double lml = 0.0;
};

class GramBuilder {
 public:
  GramBuilder(std::span<const double> columns, std::size_t n, std::size_t dim)
      : columns_(columns), n_(n), dim_(dim), point_(dim), gram_(n * n) {}

  // Lower triangle of the noiseless kernel matrix, row-major.
  const std::vector<double>& build(const KernelParams& params) {
    const auto& kt = simd::active_kernels();
    std::vector<double> inv_ls(dim_);
    for (std::size_t d = 0; d < dim_; ++d) inv_ls[d] = 1.0 / params.lengthscales[d];
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t d = 0; d < dim_; ++d) point_[d] = columns_[d * n_ + i];
      double* row = gram_.data() + i * n_;
      kt.scaled_sqdist(columns_.data(), n_, dim_, i + 1, point_.data(), inv_ls.data(), row);
      kt.matern52(row, i + 1, params.signal_variance);
    }
    return gram_;
  }

 private:
  std::span<const double> columns_;
  std::size_t n_;
  std::size_t dim_;
  std::vector<double> point_;
  std::vector<double> gram_;
};

// In-place lower Cholesky of the row-major lower triangle of `a`.
bool cholesky(std::vector<double>& a, std::size_t n) {
  const auto& kt = simd::active_kernels();
  for (std::size_t i = 0; i < n; ++i) {
    double* li = a.data() + i * n;
    for (std::size_t j = 0; j < i; ++j) {
      const double* lj = a.data() + j * n;
      li[j] = (li[j] - kt.dot(li, lj, j)) / lj[j];
    }
    const double diag = li[i] - kt.dot(li, li, i);
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    li[i] = std::sqrt(diag);
  }
  return true;
}

// L z = b in place.
void forward_solve(const std::vector<double>& l, std::size_t n, std::span<double> b) {
  const auto& kt = simd::active_kernels();
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = l.data() + i * n;
    b[i] = (b[i] - kt.dot(li, b.data(), i)) / li[i];
  }
}

// L^T x = b in place.
void backward_solve(const std::vector<double>& l, std::size_t n, std::span<double> b) {
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * b[k];
    b[ii] = s / l[ii * n + ii];
  }
}

std::optional<Factorization> factorize(GramBuilder& builder, std::size_t n,
                                       std::span<const double> y, const KernelParams& params) {
  const std::vector<double>& gram = builder.build(params);
  Factorization f;
  for (double jitter : kJitterLadder) {
    f.chol = gram;
    for (std::size_t i = 0; i < n; ++i) f.chol[i * n + i] += params.noise_variance + jitter;
    if (!cholesky(f.chol, n)) continue;

    f.jitter = jitter;
    std::vector<double> z(y.begin(), y.end());
    forward_solve(f.chol, n, z);
    double fit_term = 0.0;
    for (double v : z) fit_term += v * v;
    double log_det_half = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_det_half += std::log(f.chol[i * n + i]);
    f.lml = -0.5 * fit_term - log_det_half - 0.5 * double(n) * std::log(2.0 * std::numbers::pi);
    backward_solve(f.chol, n, z);
    f.alpha = std::move(z);
    return f;
  }
  return std::nullopt;
}

struct LogSpace {
  bool with_noise;
  std::size_t dim;

  std::size_t size() const { return dim + 1 + (with_noise ? 1 : 0); }

  std::vector<double> encode(const KernelParams& p) const {
    std::vector<double> theta;
    theta.push_back(std::log(p.signal_variance));
    for (double l : p.lengthscales) theta.push_back(std::log(l));
    if (with_noise) theta.push_back(std::log(p.noise_variance));
    return theta;
  }

  KernelParams decode(std::span<const double> theta, double fixed_noise) const {
    KernelParams p;
    // exp(log(b)) can land an ulp outside b; clamp back onto the box.
    p.signal_variance = std::clamp(std::exp(theta[0]), kMinSignalVariance, kMaxSignalVariance);
    p.lengthscales.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      p.lengthscales[d] = std::clamp(std::exp(theta[1 + d]), kMinLengthscale, kMaxLengthscale);
    }
    p.noise_variance = with_noise
                           ? std::clamp(std::exp(theta[dim + 1]), kMinNoiseVariance, kMaxNoiseVariance)
                           : fixed_noise;
    return p;
  }

  std::pair<std::vector<double>, std::vector<double>> bounds() const {
    std::vector<double> lo{std::log(kMinSignalVariance)};
    std::vector<double> hi{std::log(kMaxSignalVariance)};
    for (std::size_t d = 0; d < dim; ++d) {
      lo.push_back(std::log(kMinLengthscale));
      hi.push_back(std::log(kMaxLengthscale));
    }
    if (with_noise) {
      lo.push_back(std::log(kMinNoiseVariance));
      hi.push_back(std::log(kMaxNoiseVariance));
    }
    return {lo, hi};
  }
};

}  // namespace

GpModel GpModel::fit(std::span<const Point> inputs, std::span<const double> outputs,
                     const Bounds& bounds, const KernelParams& initial,
                     const FitOptions& options) {
  const std::size_t n = inputs.size();
  if (n == 0) throw std::invalid_argument("GP fit needs at least one observation");
  if (outputs.size() != n) throw std::invalid_argument("GP fit: inputs/outputs size mismatch");
  const std::size_t dim = bounds.size();
  if (dim == 0) throw std::invalid_argument("GP fit: empty bounds");
  for (const auto& [lo, hi] : bounds) {
    if (!(lo < hi)) throw std::invalid_argument("GP fit: bound lo must be < hi");
  }
  if (initial.lengthscales.size() != dim) {
    throw std::invalid_argument("GP fit: lengthscale count must match input dimension");
  }
  initial.validate();

  GpModel m;
  m.n_ = n;
  m.dim_ = dim;
  m.bounds_ = bounds;

  m.columns_.assign(n * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (inputs[i].size() != dim) throw std::invalid_argument("GP fit: input row has wrong size");
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = inputs[i][d];
      if (!std::isfinite(v)) throw std::invalid_argument("GP fit: non-finite input");
      m.columns_[d * n + i] = (v - bounds[d].first) / (bounds[d].second - bounds[d].first);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      bool same = true;
      for (std::size_t d = 0; d < dim && same; ++d) {
        same = std::abs(m.columns_[d * n + i] - m.columns_[d * n + j]) <= kDuplicateTolerance;
      }
      if (same) {
        throw std::invalid_argument("GP fit: duplicate input rows " + std::to_string(j) + " and " +
                                    std::to_string(i));
      }
    }
  }

  double mean = 0.0;
  for (double y : outputs) {
    if (!std::isfinite(y)) throw std::invalid_argument("GP fit: non-finite output");
    mean += y;
  }
  mean /= double(n);
  double var = 0.0;
  for (double y : outputs) var += (y - mean) * (y - mean);
  var /= double(n);
  const double scale = std::sqrt(var);
  m.y_mean_ = mean;
  m.y_scale_ = (scale > 1e-12 * std::max(1.0, std::abs(mean))) ? scale : 1.0;
  m.y_std_.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.y_std_[i] = (outputs[i] - mean) / m.y_scale_;
  m.best_index_ = std::size_t(std::min_element(outputs.begin(), outputs.end()) - outputs.begin());

  GramBuilder builder(m.columns_, n, dim);
  KernelParams chosen = initial;

  if (options.optimize_hyperparams) {
    const LogSpace space{options.optimize_noise, dim};
    const auto [lo, hi] = space.bounds();
    const auto negative_lml = [&](std::span<const double> theta) {
      const auto f = factorize(builder, n, m.y_std_, space.decode(theta, initial.noise_variance));
      return f ? -f->lml : std::numeric_limits<double>::infinity();
    };

    PatternSearchOptions ps;
    ps.initial_step.assign(space.size(), 0.5);
    ps.min_step_ratio = 0.02;
    ps.max_evals = options.max_evals_per_start;

    std::mt19937_64 rng(options.seed);
    std::vector<double> best_theta = space.encode(initial);
    double best_value = negative_lml(best_theta);
    const int restarts = std::max(1, options.restarts);
    for (int s = 0; s < restarts; ++s) {
      std::vector<double> start;
      if (s == 0) {
        start = best_theta;
      } else {
        start.resize(space.size());
        for (std::size_t i = 0; i < start.size(); ++i) {
          start[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
        }
      }
      const double f0 = (s == 0) ? best_value : negative_lml(start);
      const auto result = pattern_search(negative_lml, std::move(start), f0, lo, hi, ps);
      if (result.value < best_value) {
        best_value = result.value;
        best_theta = result.x;
      }
    }
    chosen = space.decode(best_theta, initial.noise_variance);
  }

  auto f = factorize(builder, n, m.y_std_, chosen);
  if (!f) {
    throw NotPositiveDefinite("GP fit: Gram matrix not positive definite after jitter 1e-4");
  }
  m.params_ = std::move(chosen);
  m.inv_lengthscales_.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) m.inv_lengthscales_[d] = 1.0 / m.params_.lengthscales[d];
  m.chol_ = std::move(f->chol);
  m.alpha_ = std::move(f->alpha);
  m.jitter_ = f->jitter;
  m.log_marginal_likelihood_ = f->lml;
  return m;
}

Point GpModel::normalize(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("GP query has wrong dimension");
  Point u(dim_);
  for (std::size_t d = 0; d < dim_; ++d) {
    u[d] = (x[d] - bounds_[d].first) / (bounds_[d].second - bounds_[d].first);
  }
  return u;
}

Prediction GpModel::posterior_standardized(std::span<const double> unit_x) const {
  if (unit_x.size() != dim_) throw std::invalid_argument("GP query has wrong dimension");
  const auto& kt = simd::active_kernels();
  std::vector<double> k(n_);
  kt.scaled_sqdist(columns_.data(), n_, dim_, n_, unit_x.data(), inv_lengthscales_.data(),
                   k.data());
  kt.matern52(k.data(), n_, params_.signal_variance);
  const double mean = kt.dot(k.data(), alpha_.data(), n_);
  forward_solve(chol_, n_, k);
  const double var = std::max(0.0, params_.signal_variance - kt.dot(k.data(), k.data(), n_));
  return {mean, std::sqrt(var)};
}

Prediction GpModel::posterior(std::span<const double> x) const {
  const Point u = normalize(x);
  const Prediction p = posterior_standardized(u);
  return {y_mean_ + y_scale_ * p.mean, y_scale_ * p.std};
}

}  // namespace hullopt::gp
