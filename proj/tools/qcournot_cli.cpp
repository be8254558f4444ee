// qcournot: command-line front end for the asymmetric quantum Cournot duopoly.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qcournot/analysis.hpp"
#include "qcournot/classical_game.hpp"
#include "qcournot/equilibrium_solver.hpp"
#include "qcournot/quantum_payoff.hpp"
#include "qcournot/run_config.hpp"
#include "qcournot/sweep_csv.hpp"

namespace {

using namespace qcournot;

constexpr double kLossDeviationLimit = 1e-10;

struct PointFlags {
  std::optional<double> k;
  std::optional<double> gamma;
  std::optional<double> gamma_frac;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--k", k, "demand-minus-cost scale k >= 1");
    auto* g = cmd->add_option("--gamma", gamma, "beam-splitter angle in radians, [0, pi/4)");
    auto* f = cmd->add_option("--gamma-frac", gamma_frac, "beam-splitter angle as a fraction of pi/4");
    g->excludes(f);
  }

  GamePoint resolve(const RunConfig& cfg) const {
    double angle = cfg.default_gamma;
    if (gamma) angle = *gamma;
    if (gamma_frac) angle = *gamma_frac * kQuarterPi;
    return GamePoint::make(k.value_or(cfg.default_k), angle);
  }
};

struct GridFlags {
  double k_min = 1.0;
  double k_max = 20.0;
  int k_steps = 39;
  double g_min = 0.0;
  double g_max = kQuarterPi;
  int g_steps = 41;
  std::optional<std::string> out;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--k-min", k_min, "smallest k")->capture_default_str();
    cmd->add_option("--k-max", k_max, "largest k")->capture_default_str();
    cmd->add_option("--k-steps", k_steps, "number of k values (inclusive grid)")
        ->capture_default_str();
    cmd->add_option("--gamma-min", g_min, "smallest gamma")->capture_default_str();
    cmd->add_option("--gamma-max", g_max, "largest gamma (capped at pi/4 - 1e-6)")
        ->capture_default_str();
    cmd->add_option("--gamma-steps", g_steps, "number of gamma values (inclusive grid)")
        ->capture_default_str();
    cmd->add_option("--out", out, "output CSV path (stdout if absent)");
  }
};

class Printer {
 public:
  Printer(std::ostream& out, int digits) : out_(out), digits_(digits) {}

  void num(const char* key, double v) { out_ << key << '=' << csv::format_number(v, digits_) << '\n'; }
  void text(const char* key, std::string_view v) { out_ << key << '=' << v << '\n'; }

 private:
  std::ostream& out_;
  int digits_;
};

int run_payoff(const RunConfig& cfg, const PointFlags& pf, double x1_sq, double x2_sq,
               const std::string& method, std::optional<std::uint64_t> samples,
               std::optional<std::uint64_t> seed, std::optional<double> tail_tol) {
  const GamePoint g = pf.resolve(cfg);
  const StrategyPair s = StrategyPair::from_squares(x1_sq, x2_sq);
  Printer p(std::cout, cfg.output_precision);
  if (method == "closed") {
    const auto u = quantum::quantum_payoffs_closed(s, g);
    p.num("u1", u.u1);
    p.num("u2", u.u2);
  } else if (method == "series") {
    const auto u = quantum::quantum_payoffs_series(s, g, tail_tol.value_or(cfg.series_tail_tol));
    p.num("u1", u.u1);
    p.num("u2", u.u2);
  } else {
    const auto u = quantum::quantum_payoffs_mc(s, g, samples.value_or(cfg.mc_samples),
                                               seed.value_or(cfg.mc_seed));
    p.num("u1", u.u1);
    p.num("u2", u.u2);
    p.num("stderr2", u.stderr2);
  }
  return 0;
}

int run_nash(const RunConfig& cfg, const PointFlags& pf, const std::string& method, double tol) {
  const GamePoint g = pf.resolve(cfg);
  const auto eq = method == "numeric" ? equilibrium::numeric_nash(g, tol)
                                      : equilibrium::closed_form_nash(g);
  Printer p(std::cout, cfg.output_precision);
  p.num("x1_sq", eq.x1_sq);
  p.num("x2_sq", eq.x2_sq);
  p.num("U1", eq.u1);
  p.num("U2", eq.u2);
  p.text("branch", equilibrium::to_string(eq.branch));
  if (const auto gc = equilibrium::transition_gamma(g.k())) p.num("gamma_c", *gc);
  return 0;
}

int run_sweep(const RunConfig& cfg, const GridFlags& gf, bool regions_only) {
  const analysis::GridSpec kg{gf.k_min, gf.k_max, gf.k_steps};
  const analysis::GridSpec gg{gf.g_min, gf.g_max, gf.g_steps};
  const analysis::SweepTable table = analysis::sweep(kg, gg);

  auto emit = [&](std::ostream& os) {
    if (regions_only) {
      csv::write_regions(os, table, cfg.output_precision);
    } else {
      csv::write_sweep(os, table, cfg.output_precision);
    }
  };
  if (gf.out) {
    std::ofstream file(*gf.out, std::ios::binary);
    if (!file) throw DomainError("cannot write " + *gf.out);
    emit(file);
    file.flush();
    if (!file) throw DomainError("write failed for " + *gf.out);
  } else {
    emit(std::cout);
  }
  return 0;
}

int run_loss_check(const RunConfig& cfg, const PointFlags& pf, double x1, double x2,
                   double kappa_t) {
  const GamePoint g = pf.resolve(cfg);
  const StrategyPair s = StrategyPair::make(x1, x2);
  const quantum::LossChannel ch{kappa_t, 1.0};
  const auto before = quantum::quantum_payoffs_closed(s, g);
  const auto after =
      quantum::quantum_payoffs_closed(quantum::apply_loss(quantum::compensate_loss(s, ch), ch), g);
  const double deviation = std::max(std::abs(after.u1 - before.u1), std::abs(after.u2 - before.u2));
  Printer p(std::cout, cfg.output_precision);
  p.num("u1_before", before.u1);
  p.num("u2_before", before.u2);
  p.num("u1_after", after.u1);
  p.num("u2_after", after.u2);
  p.num("deviation", deviation);
  const bool ok = deviation <= kLossDeviationLimit;
  p.text("verdict", ok ? "invariant" : "violated");
  return ok ? 0 : 2;
}

int run_classical(const RunConfig& cfg, std::optional<double> k_flag, const std::string& dist_name,
                  double sigma_sq, std::optional<double> q1, std::optional<double> q2) {
  const double k = k_flag.value_or(cfg.default_k);
  require_k(k);
  const classical::CountDistribution dist =
      dist_name == "poisson"         ? classical::CountDistribution::poisson()
      : dist_name == "deterministic" ? classical::CountDistribution::deterministic()
                                     : classical::CountDistribution::constant_variance(sigma_sq);
  Printer p(std::cout, cfg.output_precision);
  if (q1 || q2) {
    if (!q1 || !q2) throw DomainError("--q1 and --q2 must be given together");
    const classical::ClassicalQuantities q{*q1, *q2, k};
    const auto u = classical::classical_payoffs(q, dist);
    p.num("u1", u.u1);
    p.num("u2", u.u2);
    if (*q2 > 0.0) {
      const auto m = classical::mandel_q(dist, *q2);
      p.num("mandel_q", m.q);
      p.num("g2", m.g2);
    }
  }
  const auto eq = classical::general_nash(dist, k);
  const auto u_eq = classical::classical_payoffs({eq.q1, eq.q2, k}, dist);
  p.num("q1_star", eq.q1);
  p.num("q2_star", eq.q2);
  p.num("u1_star", u_eq.u1);
  p.num("u2_star", u_eq.u2);
  p.text("firm2_advantage", classical::firm2_advantage(dist, k) ? "true" : "false");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric quantum Cournot duopoly: payoffs, equilibria, sweeps"};
  app.require_subcommand(1);
  std::optional<std::string> config_path;
  app.add_option("--config", config_path,
                 std::string("key=value defaults file (else $") + kConfigEnvVar + ")");

  // payoff
  auto* payoff = app.add_subcommand("payoff", "expected payoffs for given strategies");
  PointFlags payoff_point;
  payoff_point.add_to(payoff);
  double x1_sq = 0.0;
  double x2_sq = 0.0;
  std::string payoff_method = "closed";
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tail_tol;
  payoff->add_option("--x1-sq", x1_sq, "firm 1 squared displacement")->required();
  payoff->add_option("--x2-sq", x2_sq, "firm 2 squared displacement")->required();
  payoff->add_option("--method", payoff_method, "closed | series | mc")
      ->check(CLI::IsMember({"closed", "series", "mc"}))
      ->capture_default_str();
  payoff->add_option("--samples", samples, "Monte Carlo sample count");
  payoff->add_option("--seed", seed, "Monte Carlo seed");
  payoff->add_option("--tail-tol", tail_tol, "series truncation tail mass");

  // nash
  auto* nash = app.add_subcommand("nash", "Nash equilibrium at one game point");
  PointFlags nash_point;
  nash_point.add_to(nash);
  std::string nash_method = "closed";
  double nash_tol = 1e-10;
  nash->add_option("--method", nash_method, "closed | numeric")
      ->check(CLI::IsMember({"closed", "numeric"}))
      ->capture_default_str();
  nash->add_option("--tol", nash_tol, "numeric best-response tolerance")->capture_default_str();

  // sweep / regions
  auto* sweep = app.add_subcommand("sweep", "equilibrium table over a (k, gamma) grid as CSV");
  GridFlags sweep_grid;
  sweep_grid.add_to(sweep);
  auto* regions = app.add_subcommand("regions", "sweep restricted to the region columns");
  GridFlags region_grid;
  region_grid.add_to(regions);

  // loss-check
  auto* loss = app.add_subcommand("loss-check", "payoff invariance under compensated photon loss");
  PointFlags loss_point;
  loss_point.add_to(loss);
  double x1 = 0.0;
  double x2 = 0.0;
  double kappa_t = 0.0;
  loss->add_option("--x1", x1, "firm 1 displacement magnitude")->required();
  loss->add_option("--x2", x2, "firm 2 displacement magnitude")->required();
  loss->add_option("--kappa-t", kappa_t, "loss rate times exposure time")->required();

  // classical
  auto* classic = app.add_subcommand("classical", "classical asymmetric Cournot game");
  std::optional<double> classic_k;
  std::string dist_name = "poisson";
  double sigma_sq = 0.0;
  std::optional<double> q1;
  std::optional<double> q2;
  classic->add_option("--k", classic_k, "demand-minus-cost scale k >= 1");
  classic->add_option("--dist", dist_name, "poisson | deterministic | constant")
      ->check(CLI::IsMember({"poisson", "deterministic", "constant"}))
      ->capture_default_str();
  classic->add_option("--variance", sigma_sq, "variance for --dist constant")->capture_default_str();
  classic->add_option("--q1", q1, "firm 1 quantity");
  classic->add_option("--q2", q2, "firm 2 mean quantity");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = resolve_config(config_path);
    if (*payoff) {
      return run_payoff(cfg, payoff_point, x1_sq, x2_sq, payoff_method, samples, seed, tail_tol);
    }
    if (*nash) return run_nash(cfg, nash_point, nash_method, nash_tol);
    if (*sweep) return run_sweep(cfg, sweep_grid, false);
    if (*regions) return run_sweep(cfg, region_grid, true);
    if (*loss) return run_loss_check(cfg, loss_point, x1, x2, kappa_t);
    if (*classic) return run_classical(cfg, classic_k, dist_name, sigma_sq, q1, q2);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
