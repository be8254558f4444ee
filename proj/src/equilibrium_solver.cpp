#include "qcournot/equilibrium_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcournot/golden_section.hpp"
#include "qcournot/quantum_payoff.hpp"

namespace qcournot::equilibrium {

namespace {

constexpr int kMaxRounds = 10000;

struct Strategies {
  double x1_sq;
  double x2_sq;
};

Strategies interior_strategies(const GamePoint& g) {
  const double c = std::cos(g.gamma());
  const double c2g = g.cos2g();
  const double sec2g = 1.0 / c2g;
  const double scale = 2.0 * c * c / (2.0 + c2g);
  return {scale * (g.k() + sec2g), std::max(scale * (g.k() - 1.0 - sec2g), 0.0)};
}

}  // namespace

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Interior:
      return "Interior";
    case Branch::Corner:
      return "Corner";
    case Branch::Boundary:
      return "Boundary";
  }
  return "?";
}

Branch classify_branch(const GamePoint& g) {
  // k = 1 is always a corner; 1/(k-1) is never formed.
  if (g.k() == 1.0) return Branch::Corner;
  const double gap = g.cos2g() - 1.0 / (g.k() - 1.0);
  if (std::abs(gap) <= kBoundaryTolerance) return Branch::Boundary;
  return gap > 0.0 ? Branch::Interior : Branch::Corner;
}

NashPayoffs branch_payoffs(const GamePoint& g, Branch branch) {
  const double k = g.k();
  const double c = std::cos(g.gamma());
  const double sn = std::sin(g.gamma());
  const double c2g = g.cos2g();
  if (branch == Branch::Interior) {
    const double denom = 4.0 * (2.0 + c2g) * (2.0 + c2g);
    const double p1 = 1.0 + 2.0 * k + c2g;
    const double p2 = 3.0 - 2.0 * k + c2g;
    return {c * c * p1 * p1 / denom, c * c * p2 * p2 / denom};
  }
  return {0.25 * k * k * c * c, 0.25 * k * (k - 2.0) * sn * sn};
}

NashPayoffs nash_payoffs(const GamePoint& g) { return branch_payoffs(g, classify_branch(g)); }

EquilibriumResult closed_form_nash(const GamePoint& g) {
  const Branch branch = classify_branch(g);
  const Strategies s =
      branch == Branch::Interior ? interior_strategies(g) : Strategies{g.k(), 0.0};
  const NashPayoffs u = branch_payoffs(g, branch);
  return {g, s.x1_sq, s.x2_sq, u.u1, u.u2, branch};
}

double best_response(Firm firm, double other_x_sq, const GamePoint& g, double tol) {
  if (!std::isfinite(other_x_sq) || other_x_sq < 0.0) {
    throw DomainError("opponent strategy must be finite and nonnegative");
  }
  const double c = std::cos(g.gamma());
  const double sn = std::sin(g.gamma());
  const auto cos_sq = static_cast<WideReal>(c * c);
  const auto sin_sq = static_cast<WideReal>(sn * sn);
  const auto k = static_cast<WideReal>(g.k());
  const auto other = static_cast<WideReal>(other_x_sq);

  auto own_payoff = [&](WideReal x) {
    if (firm == Firm::One) {
      return quantum::closed_payoffs(x, other, cos_sq, sin_sq, k).first;
    }
    return quantum::closed_payoffs(other, x, cos_sq, sin_sq, k).second;
  };
  const WideReal arg = golden_section_maximize(own_payoff, WideReal(0), WideReal(4) * k,
                                               static_cast<WideReal>(tol));
  return std::max(static_cast<double>(arg), 0.0);
}

EquilibriumResult numeric_nash(const GamePoint& g, double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    throw DomainError("numeric_nash tolerance must lie in [1e-12, 1e-4]");
  }
  // Inner searches run well below the outer tolerance so that search noise
  // does not masquerade as iteration progress.
  const double inner_tol = tol * 1e-3;
  double a = 0.5 * g.k();
  double b = 0.5 * g.k();
  double prev_change = 0.0;
  for (int round = 1; round <= kMaxRounds; ++round) {
    const double a_next = best_response(Firm::One, b, g, inner_tol);
    const double b_next = best_response(Firm::Two, a_next, g, inner_tol);
    const double change = std::max(std::abs(a_next - a), std::abs(b_next - b));
    a = a_next;
    b = b_next;
    if (change == 0.0) break;
    if (round > 1 && change < tol) {
      // Linear convergence: remaining distance ~ change * rho / (1 - rho).
      const double rho = std::min(change / prev_change, 0.999);
      if (change * rho / (1.0 - rho) < tol) break;
    }
    prev_change = change;
    if (round == kMaxRounds) {
      std::ostringstream os;
      os << "best-response iteration did not converge at k=" << g.k() << ", gamma=" << g.gamma();
      throw ConvergenceError(os.str(), a, b);
    }
  }
  const quantum::QuantumPayoffs u =
      quantum::quantum_payoffs_closed(StrategyPair::from_squares(a, b), g);
  const Branch branch = b <= 10.0 * tol ? Branch::Corner : Branch::Interior;
  return {g, a, b, u.u1, u.u2, branch};
}

std::optional<double> transition_gamma(double k) {
  require_k(k);
  if (k < 2.0) return std::nullopt;
  return 0.5 * std::acos(1.0 / (k - 1.0));
}

}  // namespace qcournot::equilibrium
