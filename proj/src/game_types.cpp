#include "qcournot/game_types.hpp"

#include <cmath>
#include <sstream>

namespace qcournot {

void require_k(double k) {
  if (!std::isfinite(k) || k < 1.0) {
    std::ostringstream os;
    os << "k must be a finite value >= 1 (got " << k << ")";
    throw DomainError(os.str());
  }
}

GamePoint GamePoint::make(double k, double gamma) {
  require_k(k);
  if (!std::isfinite(gamma) || gamma < 0.0 || gamma >= kQuarterPi) {
    std::ostringstream os;
    os << "gamma must lie in [0, pi/4) (got " << gamma << ")";
    throw DomainError(os.str());
  }
  return GamePoint(k, gamma);
}

double GamePoint::cos2g() const noexcept { return std::cos(2.0 * gamma_); }

StrategyPair StrategyPair::make(double x1, double x2) {
  if (!std::isfinite(x1) || !std::isfinite(x2) || x1 < 0.0 || x2 < 0.0) {
    std::ostringstream os;
    os << "strategies must be finite and nonnegative (got x1=" << x1 << ", x2=" << x2 << ")";
    throw DomainError(os.str());
  }
  return StrategyPair(x1, x2, x1 * x1, x2 * x2);
}

StrategyPair StrategyPair::from_squares(double x1_sq, double x2_sq) {
  if (!std::isfinite(x1_sq) || !std::isfinite(x2_sq) || x1_sq < 0.0 || x2_sq < 0.0) {
    std::ostringstream os;
    os << "squared strategies must be finite and nonnegative (got " << x1_sq << ", " << x2_sq
       << ")";
    throw DomainError(os.str());
  }
  return StrategyPair(std::sqrt(x1_sq), std::sqrt(x2_sq), x1_sq, x2_sq);
}

}  // namespace qcournot
