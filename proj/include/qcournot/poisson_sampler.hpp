#pragma once

#include <cstdint>
#include <random>

namespace qcournot {

/// splitmix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
/// Independent of the standard library's distribution implementations, so
/// sampled streams are reproducible across toolchains.
inline double canonical(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Poisson variate with mean `mean` >= 0. Sequential-search inversion below
/// mean 30, Hoermann's transformed rejection (PTRS) at and above it.
class PoissonSampler {
 public:
  static constexpr double kRejectionThreshold = 30.0;

  explicit PoissonSampler(double mean);

  std::uint64_t operator()(std::mt19937_64& engine) const;

  double mean() const noexcept { return mean_; }

 private:
  std::uint64_t sample_inversion(std::mt19937_64& engine) const;
  std::uint64_t sample_ptrs(std::mt19937_64& engine) const;

  double mean_;
  double exp_neg_mean_ = 0.0;
  // PTRS constants
  double log_mean_ = 0.0;
  double b_ = 0.0;
  double a_ = 0.0;
  double inv_alpha_ = 0.0;
  double vr_ = 0.0;
};

}  // namespace qcournot
