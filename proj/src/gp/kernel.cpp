#include "hullopt/gp.hpp"

#include <cmath>
#include <string>

namespace hullopt::gp {

KernelParams KernelParams::isotropic(std::size_t dim, double lengthscale, double signal_variance,
                                     double noise_variance) {
  return KernelParams{signal_variance, std::vector<double>(dim, lengthscale), noise_variance};
}

void KernelParams::validate() const {
  if (!(signal_variance > 0.0) || !std::isfinite(signal_variance)) {
    throw std::invalid_argument("signal_variance must be positive");
  }
  if (lengthscales.empty()) throw std::invalid_argument("lengthscales must not be empty");
  for (double l : lengthscales) {
    if (!(l >= kMinLengthscale && l <= kMaxLengthscale)) {
      throw std::invalid_argument("lengthscale " + std::to_string(l) + " outside [0.05, 10]");
    }
  }
  if (!(noise_variance >= kMinNoiseVariance) || !std::isfinite(noise_variance)) {
    throw std::invalid_argument("noise_variance must be >= 1e-8");
  }
}

double kernel_eval(const KernelParams& params, std::span<const double> a,
                   std::span<const double> b) {
  params.validate();
  if (a.size() != params.lengthscales.size() || b.size() != a.size()) {
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  }
  double rho2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double u = (a[i] - b[i]) / params.lengthscales[i];
    rho2 += u * u;
  }
  const double s = std::sqrt(5.0 * rho2);
  return params.signal_variance * (1.0 + s + 5.0 * rho2 / 3.0) * std::exp(-s);
}

}  // namespace hullopt::gp
