#include "qcournot/classical_game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcournot/game_types.hpp"

namespace qcournot::classical {

namespace {

constexpr double kRootTolerance = 1e-10;
constexpr int kBisectionCap = 200;
constexpr double kCurvatureStep = 1e-4;

}  // namespace

CountDistribution CountDistribution::deterministic() {
  return {DistributionKind::Deterministic, 0.0, nullptr, nullptr};
}

CountDistribution CountDistribution::constant_variance(double sigma_sq) {
  if (!std::isfinite(sigma_sq) || sigma_sq < 0.0) {
    throw DomainError("constant variance must be finite and nonnegative");
  }
  return {DistributionKind::ConstantVariance, sigma_sq, nullptr, nullptr};
}

CountDistribution CountDistribution::poisson() {
  return {DistributionKind::Poisson, 0.0, nullptr, nullptr};
}

CountDistribution CountDistribution::custom(RealMap variance, RealMap derivative) {
  if (!variance || !derivative) {
    throw DomainError("custom distribution needs both a variance and its derivative");
  }
  return {DistributionKind::Custom, 0.0, std::move(variance), std::move(derivative)};
}

double CountDistribution::variance(double q2) const {
  switch (kind_) {
    case DistributionKind::Deterministic:
      return 0.0;
    case DistributionKind::ConstantVariance:
      return sigma_sq_;
    case DistributionKind::Poisson:
      return q2;
    case DistributionKind::Custom:
      break;
  }
  const double v = variance_(q2);
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << "variance undefined or negative at q2=" << q2;
    throw DomainError(os.str());
  }
  return v;
}

double CountDistribution::variance_derivative(double q2) const {
  switch (kind_) {
    case DistributionKind::Deterministic:
    case DistributionKind::ConstantVariance:
      return 0.0;
    case DistributionKind::Poisson:
      return 1.0;
    case DistributionKind::Custom:
      break;
  }
  const double d = derivative_(q2);
  if (!std::isfinite(d)) {
    std::ostringstream os;
    os << "variance derivative undefined at q2=" << q2;
    throw DomainError(os.str());
  }
  return d;
}

double derivative_mismatch(const CountDistribution& dist, std::span<const double> q2_samples,
                           double step) {
  double worst = 0.0;
  for (double q : q2_samples) {
    const double lo = std::max(q - step, 0.0);
    const double hi = q + step;
    const double fd = (dist.variance(hi) - dist.variance(lo)) / (hi - lo);
    const double an = dist.variance_derivative(q);
    const double scale = std::max({std::abs(an), std::abs(fd), 1.0});
    worst = std::max(worst, std::abs(fd - an) / scale);
  }
  return worst;
}

void ClassicalQuantities::validate() const {
  require_k(k);
  if (!std::isfinite(q1) || !std::isfinite(q2) || q1 < 0.0 || q2 < 0.0) {
    throw DomainError("quantities must be finite and nonnegative");
  }
}

Payoffs classical_payoffs(const ClassicalQuantities& q, const CountDistribution& dist) {
  q.validate();
  const double margin = q.k - (q.q1 + q.q2);
  return {q.q1 * margin, q.q2 * margin - dist.variance(q.q2)};
}

MandelQ mandel_q(const CountDistribution& dist, double q2) {
  if (!std::isfinite(q2) || q2 <= 0.0) {
    throw DomainError("Mandel-Q and g2 need a strictly positive mean count");
  }
  const double mandel = dist.variance(q2) / q2 - 1.0;
  return {mandel, (mandel + q2) / q2};
}

Payoffs classical_payoffs_mandel_form(const ClassicalQuantities& q, double mandel) {
  q.validate();
  return {q.q1 * (q.k - (q.q1 + q.q2)), q.q2 * (q.k - (q.q1 + q.q2 + mandel + 1.0))};
}

Equilibrium general_nash(const CountDistribution& dist, double k) {
  require_k(k);
  auto residual = [&](double q2) {
    return q2 - std::max(k / 3.0 - (2.0 / 3.0) * dist.variance_derivative(q2), 0.0);
  };

  double lo = 0.0;
  double hi = k;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  double root;
  if (f_lo == 0.0) {
    root = lo;
  } else if (f_hi == 0.0) {
    root = hi;
  } else {
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
      throw ConvergenceError("no sign change of the equilibrium condition on [0, k]", lo, hi);
    }
    int iter = 0;
    while (hi - lo > kRootTolerance) {
      if (++iter > kBisectionCap) {
        throw ConvergenceError("bisection iteration cap reached", lo, hi);
      }
      const double mid = 0.5 * (lo + hi);
      const double f_mid = residual(mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    root = 0.5 * (lo + hi);
  }

  // Firm 2's payoff has curvature -2 - d2Var/dq2^2.
  const double h = kCurvatureStep;
  const double left = std::max(root - h, 0.0);
  const double right = left + 2.0 * h;
  const double mid = left + h;
  const double curvature =
      (dist.variance(right) - 2.0 * dist.variance(mid) + dist.variance(left)) / (h * h);
  if (!(curvature > -2.0)) {
    std::ostringstream os;
    os << "second-order condition d2Var/dq2^2 > -2 violated at q2*=" << root
       << " (curvature " << curvature << ")";
    throw DomainError(os.str());
  }

  return {(k - root) / 2.0, root};
}

bool firm2_advantage(const CountDistribution& dist, double k) {
  const Equilibrium eq = general_nash(dist, k);
  const double d = dist.variance_derivative(eq.q2);
  return d * (k + d) / 3.0 + dist.variance(eq.q2) < 0.0;
}

PoissonEquilibrium poisson_case_equilibrium(double k) {
  require_k(k);
  const double q2 = std::max((k - 2.0) / 3.0, 0.0);
  return {std::min((k + 1.0) / 3.0, k / 2.0), q2,
          std::min((k + 1.0) * (k + 1.0) / 9.0, k * k / 4.0), q2 * q2};
}

}  // namespace qcournot::classical
