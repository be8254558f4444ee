#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qcournot/equilibrium_solver.hpp"
#include "qcournot/game_types.hpp"

namespace qcournot::analysis {

struct SumDiff {
  double sum;   ///< U1 + U2 at equilibrium
  double diff;  ///< U1 - U2 at equilibrium
};

SumDiff payoff_sum_diff(const GamePoint& g);

struct AsymmetryMeasures {
  double s;      ///< degree of asymmetry, min(2/k, 1)
  double s_bar;  ///< degree of symmetry, 1 - s
  double xi;     ///< degree of cooperation, (1 - cos 2g)/(1 + cos 2g)
};

AsymmetryMeasures asymmetry_measures(const GamePoint& g);

/// (U1 - U2)/k^2 written through (s, s_bar, xi); dispatches on how s_bar
/// compares with xi, with s_bar == xi (within 1e-12) handled as the
/// transition boundary.
double scaled_diff(const GamePoint& g);

struct BoundaryValues {
  double scaled_diff;
  double scaled_sum;
};

/// Scaled difference and sum on the transition boundary; needs k >= 2.
BoundaryValues boundary_values(double k);

/// Sign pattern of (dU1/dg, dU2/dg, d(U1+U2)/dg):
/// A = (-,-,-), B = (-,+,-), C = (-,+,+), D = (+,+,+).
enum class Region { A, B, C, D };

char to_char(Region r) noexcept;

/// A sign pattern outside the four regions was observed.
class RegionInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRegionStep = 1e-6;
inline constexpr double kRegionEdgeExclusion = 1e-4;

/// Classifies by central-difference gamma-derivatives (step 1e-6) of the
/// equilibrium payoffs, always differencing the formula of the branch that
/// holds at `g` so points near the transition stay well defined. Throws
/// DomainError within 1e-4 of gamma = 0 or pi/4, on the boundary itself, and
/// at k = 2 (U2 vanishes identically there); throws RegionInconsistency for a
/// sign pattern outside A-D.
Region classify_region(const GamePoint& g);

/// Inclusive grid (min, max, count); count = 1 yields just `min`.
struct GridSpec {
  double min;
  double max;
  int count;

  std::vector<double> values() const;
};

inline constexpr double kGammaCap = kQuarterPi - 1e-6;

struct SweepRow {
  double k;
  double gamma;
  double x1_sq;
  double x2_sq;
  double u1;
  double u2;
  double sum;
  double diff;
  equilibrium::Branch branch;
  std::optional<Region> region;  ///< empty where classification is ill-conditioned
};

using SweepTable = std::vector<SweepRow>;

/// Validates the two grids; gamma values above kGammaCap are capped.
void validate_grids(const GridSpec& k_grid, const GridSpec& gamma_grid);

/// Rows ordered by (k index, gamma index). Grid points are evaluated in
/// parallel with OpenMP; the table does not depend on the thread count.
SweepTable sweep(const GridSpec& k_grid, const GridSpec& gamma_grid);

/// Single-threaded reference for sweep.
SweepTable sweep_serial(const GridSpec& k_grid, const GridSpec& gamma_grid);

}  // namespace qcournot::analysis
