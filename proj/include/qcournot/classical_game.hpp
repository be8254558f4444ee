#pragma once

// Asymmetric classical Cournot duopoly: firm 1 executes its quantity exactly,
// firm 2's realized quantity is a random count with mean q2 drawn from a
// CountDistribution. Everything is in the a, c -> infinity limit with k = a - c.

#include <functional>
#include <span>

namespace qcournot::classical {

enum class DistributionKind { Deterministic, ConstantVariance, Poisson, Custom };

/// Execution-noise law of firm 2, described through its variance as a
/// function of the mean.
class CountDistribution {
 public:
  using RealMap = std::function<double(double)>;

  static CountDistribution deterministic();
  static CountDistribution constant_variance(double sigma_sq);
  static CountDistribution poisson();
  /// `variance` maps q2 to the variance; `derivative` is its analytic q2-derivative.
  static CountDistribution custom(RealMap variance, RealMap derivative);

  DistributionKind kind() const noexcept { return kind_; }

  /// Variance of the count at mean q2. Throws DomainError if undefined or negative.
  double variance(double q2) const;
  double variance_derivative(double q2) const;

 private:
  CountDistribution(DistributionKind kind, double sigma_sq, RealMap variance, RealMap derivative)
      : kind_(kind), sigma_sq_(sigma_sq), variance_(std::move(variance)),
        derivative_(std::move(derivative)) {}

  DistributionKind kind_;
  double sigma_sq_ = 0.0;
  RealMap variance_;
  RealMap derivative_;
};

/// Largest relative mismatch between the supplied variance derivative and a
/// central finite difference of the variance, over the sample points.
/// Advisory only: kinks in the variance legitimately produce large values.
double derivative_mismatch(const CountDistribution& dist, std::span<const double> q2_samples,
                           double step = 1e-6);

struct ClassicalQuantities {
  double q1;
  double q2;
  double k;

  void validate() const;
};

struct Payoffs {
  double u1;
  double u2;
};

/// u1 = q1[k-(q1+q2)], u2 = q2[k-(q1+q2)] - Var(q2).
Payoffs classical_payoffs(const ClassicalQuantities& q, const CountDistribution& dist);

struct MandelQ {
  double q;   ///< Var/mean - 1
  double g2;  ///< second-order intensity correlation (Q + mean)/mean
};

MandelQ mandel_q(const CountDistribution& dist, double q2);

/// Same payoffs written through the Mandel-Q parameter of firm 2's count.
Payoffs classical_payoffs_mandel_form(const ClassicalQuantities& q, double mandel);

struct Equilibrium {
  double q1;
  double q2;
};

/// Solves q2 = max[k/3 - (2/3) dVar/dq2, 0] by bisection on [0, k] and sets
/// q1 = (k - q2)/2. Throws ConvergenceError if the bracket has no sign change
/// or the iteration cap is reached, and DomainError if the second-order
/// condition d2Var/dq2^2 > -2 fails at the root.
Equilibrium general_nash(const CountDistribution& dist, double k);

/// True iff (1/3) d (k + d) + Var(q2*) < 0 with d = dVar/dq2 at the equilibrium.
bool firm2_advantage(const CountDistribution& dist, double k);

struct PoissonEquilibrium {
  double q1;
  double q2;
  double u1;
  double u2;
};

PoissonEquilibrium poisson_case_equilibrium(double k);

}  // namespace qcournot::classical
