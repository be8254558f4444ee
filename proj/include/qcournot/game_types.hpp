#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace qcournot {

/// Raised when an input lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative solver fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_a, double last_b)
      : std::runtime_error(what), last_a_(last_a), last_b_(last_b) {}

  double last_a() const noexcept { return last_a_; }
  double last_b() const noexcept { return last_b_; }

 private:
  double last_a_;
  double last_b_;
};

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// One game instance: demand-minus-cost scale k >= 1 and beam-splitter
/// angle gamma in [0, pi/4).
class GamePoint {
 public:
  static GamePoint make(double k, double gamma);

  double k() const noexcept { return k_; }
  double gamma() const noexcept { return gamma_; }
  double cos2g() const noexcept;

 private:
  GamePoint(double k, double gamma) : k_(k), gamma_(gamma) {}
  double k_;
  double gamma_;
};

/// Displacement magnitudes (x1, x2) chosen by the two firms.
class StrategyPair {
 public:
  static StrategyPair make(double x1, double x2);
  static StrategyPair from_squares(double x1_sq, double x2_sq);

  double x1() const noexcept { return x1_; }
  double x2() const noexcept { return x2_; }
  double x1_sq() const noexcept { return x1_sq_; }
  double x2_sq() const noexcept { return x2_sq_; }

 private:
  StrategyPair(double x1, double x2, double x1_sq, double x2_sq)
      : x1_(x1), x2_(x2), x1_sq_(x1_sq), x2_sq_(x2_sq) {}
  double x1_;
  double x2_;
  // kept alongside the magnitudes so squared inputs round-trip exactly
  double x1_sq_;
  double x2_sq_;
};

void require_k(double k);

}  // namespace qcournot
