#pragma once

#include <optional>
#include <string_view>

#include "qcournot/game_types.hpp"

namespace qcournot::equilibrium {

/// Interior: both firms displace (cos 2g > 1/(k-1)). Corner: firm 2 plays 0.
/// Boundary: cos 2g = 1/(k-1) to within kBoundaryTolerance.
enum class Branch { Interior, Corner, Boundary };

enum class Firm { One, Two };

inline constexpr double kBoundaryTolerance = 1e-12;

std::string_view to_string(Branch b) noexcept;

Branch classify_branch(const GamePoint& g);

struct NashPayoffs {
  double u1;
  double u2;
};

struct EquilibriumResult {
  GamePoint point;
  double x1_sq;
  double x2_sq;
  double u1;
  double u2;
  Branch branch;
};

/// Closed-form equilibrium payoffs on the branch that applies at `g`.
NashPayoffs nash_payoffs(const GamePoint& g);

/// Payoff formula of one branch evaluated at `g` regardless of which branch
/// actually applies there. Both formulas are smooth on the whole domain,
/// which is what one-sided differencing near the transition needs.
/// Boundary selects the corner formula (the two coincide there).
NashPayoffs branch_payoffs(const GamePoint& g, Branch branch);

EquilibriumResult closed_form_nash(const GamePoint& g);

/// Own squared displacement maximizing the firm's closed-form payoff against
/// `other_x_sq`, by golden-section search over [0, 4k] in extended precision.
double best_response(Firm firm, double other_x_sq, const GamePoint& g, double tol = 1e-10);

/// Alternating best-response iteration from (k/2, k/2). Stops when the
/// estimated distance to the fixed point drops below `tol` (in [1e-12, 1e-4]);
/// throws ConvergenceError after 10^4 rounds.
EquilibriumResult numeric_nash(const GamePoint& g, double tol = 1e-10);

/// Angle where cos 2g = 1/(k-1); empty when k < 2 (no transition in [0, pi/4)).
std::optional<double> transition_gamma(double k);

}  // namespace qcournot::equilibrium
