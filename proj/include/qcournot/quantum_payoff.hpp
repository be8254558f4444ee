#pragma once

// Coherent-state simulation of the asymmetric duopoly. Firm 1 is scored by a
// power meter (mean photon number of mode 1), firm 2 by a photon counter
// (Poisson-distributed count in mode 2). The beam splitter is applied as its
// linear action on the coherent amplitudes; no Fock-space state is built.

#include <complex>
#include <cstdint>
#include <utility>

#include "qcournot/game_types.hpp"

namespace qcournot::quantum {

struct ModeIntensities {
  double n1;       ///< mean photon number seen by firm 1's meter
  double lambda2;  ///< Poisson mean of firm 2's count
};

struct Amplitudes {
  std::complex<double> alpha1;
  std::complex<double> alpha2;
};

struct QuantumPayoffs {
  double u1;
  double u2;
};

struct SampledPayoffs {
  double u1;
  double u2;
  double stderr2;  ///< sample standard error of u2
};

/// Symmetric amplitude loss exp(-kappa t / 2) on both modes.
struct LossChannel {
  double kappa;
  double t;

  void validate() const;
  double attenuation() const;  ///< exp(-kappa t / 2), in (0, 1]
};

Amplitudes mix_amplitudes(const StrategyPair& s, double gamma);

ModeIntensities mode_intensities(const StrategyPair& s, double gamma);

/// e^{-lambda} lambda^m / m!, evaluated in log space.
double photon_count_pmf(double lambda2, std::uint64_t m);

/// Closed-form expected payoffs from squared strategies and the beam-splitter
/// weights cos^2(gamma), sin^2(gamma), in any arithmetic type:
///   u1 = n1[k - (x1^2+x2^2)/2],  u2 = lambda2[k - 1 - (x1^2+x2^2)/2].
template <typename Real>
std::pair<Real, Real> closed_payoffs(Real x1_sq, Real x2_sq, Real cos_sq, Real sin_sq, Real k) {
  const Real n1 = (x1_sq * cos_sq + x2_sq * sin_sq) / Real(2);
  const Real lambda2 = (x2_sq * cos_sq + x1_sq * sin_sq) / Real(2);
  const Real total = (x1_sq + x2_sq) / Real(2);
  return {n1 * (k - total), lambda2 * (k - Real(1) - total)};
}

QuantumPayoffs quantum_payoffs_closed(const StrategyPair& s, const GamePoint& g);

/// Expectation over the photon count, summed term by term until the Poisson
/// tail mass is below `tail_tol` (which must lie in (0, 1e-6]).
QuantumPayoffs quantum_payoffs_series(const StrategyPair& s, const GamePoint& g,
                                      double tail_tol = 1e-12);

/// Number of samples handled by one substream in the Monte Carlo estimator.
inline constexpr std::uint64_t kMonteCarloBlock = 1u << 16;

/// Monte Carlo expectation. Samples are split into fixed blocks of
/// kMonteCarloBlock draws, each with its own engine seeded from (seed, block),
/// and merged in block order, so the result is bit-identical for any thread
/// count. Runs blocks in parallel with OpenMP.
SampledPayoffs quantum_payoffs_mc(const StrategyPair& s, const GamePoint& g,
                                  std::uint64_t n_samples, std::uint64_t seed);

/// Single-threaded reference for quantum_payoffs_mc; must agree bit for bit.
SampledPayoffs quantum_payoffs_mc_serial(const StrategyPair& s, const GamePoint& g,
                                         std::uint64_t n_samples, std::uint64_t seed);

/// Pre-scales both amplitudes by exp(+kappa t / 2).
StrategyPair compensate_loss(const StrategyPair& s, const LossChannel& ch);

/// Attenuates both amplitudes by exp(-kappa t / 2). Symmetric attenuation
/// commutes with the beam splitter, so it may be applied before or after mixing.
StrategyPair apply_loss(const StrategyPair& s, const LossChannel& ch);

}  // namespace qcournot::quantum
