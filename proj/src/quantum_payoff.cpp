#include "qcournot/quantum_payoff.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qcournot/poisson_sampler.hpp"

namespace qcournot::quantum {

void LossChannel::validate() const {
  if (!std::isfinite(kappa) || !std::isfinite(t) || kappa < 0.0 || t < 0.0) {
    throw DomainError("loss rate and exposure time must be finite and nonnegative");
  }
}

double LossChannel::attenuation() const {
  validate();
  return std::exp(-0.5 * kappa * t);
}

Amplitudes mix_amplitudes(const StrategyPair& s, double gamma) {
  const double c = std::cos(gamma);
  const double sn = std::sin(gamma);
  const double h = std::sqrt(0.5);
  return {{h * s.x1() * c, h * s.x2() * sn}, {h * s.x2() * c, h * s.x1() * sn}};
}

ModeIntensities mode_intensities(const StrategyPair& s, double gamma) {
  const double c = std::cos(gamma);
  const double sn = std::sin(gamma);
  const double c2 = c * c;
  const double s2 = sn * sn;
  return {0.5 * (s.x1_sq() * c2 + s.x2_sq() * s2), 0.5 * (s.x2_sq() * c2 + s.x1_sq() * s2)};
}

double photon_count_pmf(double lambda2, std::uint64_t m) {
  if (!std::isfinite(lambda2) || lambda2 < 0.0) {
    throw DomainError("Poisson mean must be finite and nonnegative");
  }
  if (lambda2 == 0.0) return m == 0 ? 1.0 : 0.0;
  const double md = static_cast<double>(m);
  return std::exp(-lambda2 + md * std::log(lambda2) - std::lgamma(md + 1.0));
}

QuantumPayoffs quantum_payoffs_closed(const StrategyPair& s, const GamePoint& g) {
  const double c = std::cos(g.gamma());
  const double sn = std::sin(g.gamma());
  const auto [u1, u2] = closed_payoffs(s.x1_sq(), s.x2_sq(), c * c, sn * sn, g.k());
  return {u1, u2};
}

QuantumPayoffs quantum_payoffs_series(const StrategyPair& s, const GamePoint& g,
                                      double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw DomainError("series tail tolerance must lie in (0, 1e-6]");
  }
  const ModeIntensities in = mode_intensities(s, g.gamma());
  const double lam = in.lambda2;
  const double n1 = in.n1;
  const double k = g.k();

  if (lam == 0.0) {
    return {n1 * (k - n1), 0.0};
  }

  const auto start_cut =
      static_cast<std::uint64_t>(std::ceil(lam + 12.0 * std::sqrt(lam) + 30.0));
  double u1 = 0.0;
  double u2 = 0.0;
  for (std::uint64_t m = 0;; ++m) {
    const double p = photon_count_pmf(lam, m);
    const double md = static_cast<double>(m);
    u1 += p * n1 * (k - (n1 + md));
    u2 += p * md * (k - (n1 + md));
    if (m >= start_cut) {
      // Beyond the mode the terms shrink geometrically with ratio lam/(m+2).
      const double next = photon_count_pmf(lam, m + 1);
      const double tail_bound = next / (1.0 - lam / (md + 2.0));
      if (tail_bound < tail_tol) break;
    }
  }
  return {u1, u2};
}

namespace {

struct BlockMoments {
  std::uint64_t count = 0;
  double sum_u1 = 0.0;
  double mean_u2 = 0.0;
  double m2_u2 = 0.0;  // sum of squared deviations of u2
};

BlockMoments sample_block(const PoissonSampler& sampler, double n1, double k,
                          std::uint64_t seed, std::uint64_t block, std::uint64_t count) {
  std::mt19937_64 engine(mix_seed(seed, block));
  BlockMoments out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double m = static_cast<double>(sampler(engine));
    const double margin = k - (n1 + m);
    out.sum_u1 += n1 * margin;
    const double u2 = m * margin;
    ++out.count;
    const double delta = u2 - out.mean_u2;
    out.mean_u2 += delta / static_cast<double>(out.count);
    out.m2_u2 += delta * (u2 - out.mean_u2);
  }
  return out;
}

// Chan et al. pairwise merge; applied in block order.
void merge_into(BlockMoments& acc, const BlockMoments& b) {
  if (b.count == 0) return;
  if (acc.count == 0) {
    acc = b;
    return;
  }
  const double na = static_cast<double>(acc.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double delta = b.mean_u2 - acc.mean_u2;
  acc.mean_u2 += delta * nb / n;
  acc.m2_u2 += b.m2_u2 + delta * delta * na * nb / n;
  acc.sum_u1 += b.sum_u1;
  acc.count += b.count;
}

struct McSetup {
  double n1;
  double lambda2;
  std::uint64_t blocks;
};

McSetup prepare(const StrategyPair& s, const GamePoint& g, std::uint64_t n_samples) {
  if (n_samples == 0) {
    throw DomainError("Monte Carlo needs at least one sample");
  }
  const ModeIntensities in = mode_intensities(s, g.gamma());
  return {in.n1, in.lambda2, (n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock};
}

std::uint64_t block_size(std::uint64_t block, std::uint64_t n_samples) {
  const std::uint64_t begin = block * kMonteCarloBlock;
  return std::min(kMonteCarloBlock, n_samples - begin);
}

SampledPayoffs finish(const BlockMoments& acc) {
  const double n = static_cast<double>(acc.count);
  const double var = acc.count > 1 ? acc.m2_u2 / (n - 1.0) : 0.0;
  return {acc.sum_u1 / n, acc.mean_u2, std::sqrt(var / n)};
}

}  // namespace

SampledPayoffs quantum_payoffs_mc(const StrategyPair& s, const GamePoint& g,
                                  std::uint64_t n_samples, std::uint64_t seed) {
  const McSetup setup = prepare(s, g, n_samples);
  if (setup.lambda2 == 0.0) {
    const QuantumPayoffs exact = quantum_payoffs_closed(s, g);
    return {exact.u1, exact.u2, 0.0};
  }
  const PoissonSampler sampler(setup.lambda2);
  std::vector<BlockMoments> parts(setup.blocks);
  const auto nblocks = static_cast<std::int64_t>(setup.blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    parts[ub] = sample_block(sampler, setup.n1, g.k(), seed, ub, block_size(ub, n_samples));
  }
  BlockMoments acc;
  for (const BlockMoments& p : parts) merge_into(acc, p);
  return finish(acc);
}

SampledPayoffs quantum_payoffs_mc_serial(const StrategyPair& s, const GamePoint& g,
                                         std::uint64_t n_samples, std::uint64_t seed) {
  const McSetup setup = prepare(s, g, n_samples);
  if (setup.lambda2 == 0.0) {
    const QuantumPayoffs exact = quantum_payoffs_closed(s, g);
    return {exact.u1, exact.u2, 0.0};
  }
  const PoissonSampler sampler(setup.lambda2);
  BlockMoments acc;
  for (std::uint64_t b = 0; b < setup.blocks; ++b) {
    merge_into(acc, sample_block(sampler, setup.n1, g.k(), seed, b, block_size(b, n_samples)));
  }
  return finish(acc);
}

StrategyPair compensate_loss(const StrategyPair& s, const LossChannel& ch) {
  ch.validate();
  const double gain = std::exp(0.5 * ch.kappa * ch.t);
  return StrategyPair::make(s.x1() * gain, s.x2() * gain);
}

StrategyPair apply_loss(const StrategyPair& s, const LossChannel& ch) {
  const double att = ch.attenuation();
  return StrategyPair::make(s.x1() * att, s.x2() * att);
}

}  // namespace qcournot::quantum
