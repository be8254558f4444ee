#include "qcournot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

namespace qcournot::analysis {

using equilibrium::Branch;

namespace {

constexpr double kTieTolerance = 1e-12;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

std::vector<double> checked_values(const GridSpec& grid, const char* name) {
  if (grid.count < 1 || !std::isfinite(grid.min) || !std::isfinite(grid.max) ||
      grid.max < grid.min) {
    std::ostringstream os;
    os << "invalid " << name << " grid (min=" << grid.min << ", max=" << grid.max
       << ", count=" << grid.count << ")";
    throw DomainError(os.str());
  }
  return grid.values();
}

SweepRow evaluate_point(double k, double gamma) {
  const GamePoint g = GamePoint::make(k, gamma);
  const equilibrium::EquilibriumResult eq = equilibrium::closed_form_nash(g);
  const SumDiff sd = payoff_sum_diff(g);
  std::optional<Region> region;
  try {
    region = classify_region(g);
  } catch (const DomainError&) {
    // ill-conditioned point, left unlabeled
  }
  return {k, gamma, eq.x1_sq, eq.x2_sq, eq.u1, eq.u2, sd.sum, sd.diff, eq.branch, region};
}

struct Axes {
  std::vector<double> ks;
  std::vector<double> gammas;
};

Axes make_axes(const GridSpec& k_grid, const GridSpec& gamma_grid) {
  validate_grids(k_grid, gamma_grid);
  Axes axes{k_grid.values(), gamma_grid.values()};
  for (double& g : axes.gammas) g = std::min(g, kGammaCap);
  return axes;
}

}  // namespace

SumDiff payoff_sum_diff(const GamePoint& g) {
  const double k = g.k();
  const double c = std::cos(g.gamma());
  const double c2g = g.cos2g();
  if (equilibrium::classify_branch(g) == Branch::Interior) {
    const double c4g = std::cos(4.0 * g.gamma());
    const double denom = 2.0 + c2g;
    return {c * c * (11.0 + 8.0 * k * (k - 1.0) + 8.0 * c2g + c4g) / (4.0 * denom * denom),
            c * c * (2.0 * k - 1.0) / denom};
  }
  return {0.25 * k * (k - 1.0 + c2g), 0.25 * k * (1.0 + (k - 1.0) * c2g)};
}

AsymmetryMeasures asymmetry_measures(const GamePoint& g) {
  const double s = std::min(2.0 / g.k(), 1.0);
  const double c2g = g.cos2g();
  return {s, 1.0 - s, (1.0 - c2g) / (1.0 + c2g)};
}

double scaled_diff(const GamePoint& g) {
  const AsymmetryMeasures m = asymmetry_measures(g);
  if (std::abs(m.s_bar - m.xi) <= kTieTolerance) {
    return 0.25 * m.s;
  }
  if (m.s_bar > m.xi) {
    const double t = 1.0 + m.s_bar;
    return (1.0 - 0.25 * t * t) / (3.0 + m.xi);
  }
  if (m.s_bar > 0.0) {
    return 0.25 * (1.0 - m.s_bar * m.xi) / (1.0 + m.xi);
  }
  return 0.25 * (1.0 + (2.0 / g.k() - 1.0) * m.xi) / (1.0 + m.xi);
}

BoundaryValues boundary_values(double k) {
  require_k(k);
  if (k < 2.0) {
    throw DomainError("no transition boundary for k < 2");
  }
  const double s = std::min(2.0 / k, 1.0);
  const double s_bar = 1.0 - s;
  return {0.25 * s, 0.25 * (1.0 + s_bar * s_bar) / (1.0 + s_bar)};
}

char to_char(Region r) noexcept {
  switch (r) {
    case Region::A:
      return 'A';
    case Region::B:
      return 'B';
    case Region::C:
      return 'C';
    case Region::D:
      return 'D';
  }
  return '?';
}

Region classify_region(const GamePoint& g) {
  const double gamma = g.gamma();
  if (gamma < kRegionEdgeExclusion || gamma > kQuarterPi - kRegionEdgeExclusion) {
    throw DomainError("region undefined within 1e-4 of gamma = 0 or pi/4");
  }
  if (g.k() == 2.0) {
    throw DomainError("region undefined at k = 2 (U2 vanishes identically)");
  }
  const Branch branch = equilibrium::classify_branch(g);
  if (branch == Branch::Boundary) {
    throw DomainError("region undefined on the transition boundary");
  }
  const auto lo = equilibrium::branch_payoffs(GamePoint::make(g.k(), gamma - kRegionStep), branch);
  const auto hi = equilibrium::branch_payoffs(GamePoint::make(g.k(), gamma + kRegionStep), branch);
  const int d1 = sign_of(hi.u1 - lo.u1);
  const int d2 = sign_of(hi.u2 - lo.u2);
  const int dt = sign_of((hi.u1 + hi.u2) - (lo.u1 + lo.u2));

  if (d1 < 0 && d2 < 0 && dt < 0) return Region::A;
  if (d1 < 0 && d2 > 0 && dt < 0) return Region::B;
  if (d1 < 0 && d2 > 0 && dt > 0) return Region::C;
  if (d1 > 0 && d2 > 0 && dt > 0) return Region::D;

  std::ostringstream os;
  os << "derivative sign pattern (" << d1 << ", " << d2 << ", " << dt
     << ") matches no region at k=" << g.k() << ", gamma=" << gamma;
  throw RegionInconsistency(os.str());
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  if (count < 1) return out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(min);
    return out;
  }
  const double step = (max - min) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    out.push_back(i == count - 1 ? max : min + step * static_cast<double>(i));
  }
  return out;
}

void validate_grids(const GridSpec& k_grid, const GridSpec& gamma_grid) {
  checked_values(k_grid, "k");
  checked_values(gamma_grid, "gamma");
  if (k_grid.min < 1.0) {
    throw DomainError("k grid must start at k >= 1");
  }
  if (gamma_grid.min < 0.0 || gamma_grid.min >= kQuarterPi) {
    throw DomainError("gamma grid must start inside [0, pi/4)");
  }
}

SweepTable sweep(const GridSpec& k_grid, const GridSpec& gamma_grid) {
  const Axes axes = make_axes(k_grid, gamma_grid);
  const std::size_t ng = axes.gammas.size();
  const auto total = static_cast<std::int64_t>(axes.ks.size() * ng);
  SweepTable table(static_cast<std::size_t>(total));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      table[idx] = evaluate_point(axes.ks[idx / ng], axes.gammas[idx % ng]);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return table;
}

SweepTable sweep_serial(const GridSpec& k_grid, const GridSpec& gamma_grid) {
  const Axes axes = make_axes(k_grid, gamma_grid);
  SweepTable table;
  table.reserve(axes.ks.size() * axes.gammas.size());
  for (double k : axes.ks) {
    for (double gamma : axes.gammas) table.push_back(evaluate_point(k, gamma));
  }
  return table;
}

}  // namespace qcournot::analysis
