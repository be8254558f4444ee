#include "qcournot/poisson_sampler.hpp"

#include <cmath>

#include "qcournot/game_types.hpp"

namespace qcournot {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PoissonSampler::PoissonSampler(double mean) : mean_(mean) {
  if (!std::isfinite(mean) || mean < 0.0) {
    throw DomainError("Poisson mean must be finite and nonnegative");
  }
  if (mean_ < kRejectionThreshold) {
    exp_neg_mean_ = std::exp(-mean_);
  } else {
    const double root = std::sqrt(mean_);
    log_mean_ = std::log(mean_);
    b_ = 0.931 + 2.53 * root;
    a_ = -0.059 + 0.02483 * b_;
    inv_alpha_ = 1.1239 + 1.1328 / (b_ - 3.4);
    vr_ = 0.9277 - 3.6224 / (b_ - 2.0);
  }
}

std::uint64_t PoissonSampler::operator()(std::mt19937_64& engine) const {
  if (mean_ == 0.0) return 0;
  return mean_ < kRejectionThreshold ? sample_inversion(engine) : sample_ptrs(engine);
}

std::uint64_t PoissonSampler::sample_inversion(std::mt19937_64& engine) const {
  const double u = canonical(engine);
  std::uint64_t m = 0;
  double p = exp_neg_mean_;
  double cdf = p;
  while (u > cdf) {
    ++m;
    p *= mean_ / static_cast<double>(m);
    const double next = cdf + p;
    // cdf saturated below u through rounding
    if (next == cdf) break;
    cdf = next;
  }
  return m;
}

std::uint64_t PoissonSampler::sample_ptrs(std::mt19937_64& engine) const {
  for (;;) {
    const double u = canonical(engine) - 0.5;
    const double v = canonical(engine);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a_ / us + b_) * u + mean_ + 0.43);
    if (us >= 0.07 && v <= vr_) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double lhs = std::log(v) + std::log(inv_alpha_) - std::log(a_ / (us * us) + b_);
    const double rhs = -mean_ + k * log_mean_ - std::lgamma(k + 1.0);
    if (lhs <= rhs) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace qcournot
