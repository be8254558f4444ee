// Times the OpenMP kernels against their serial references.
// usage: bench_kernels [mc_samples] [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "qcournot/analysis.hpp"
#include "qcournot/quantum_payoff.hpp"

using namespace qcournot;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-8s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  identical %s\n", name,
              serial, parallel, serial / parallel, same ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4'000'000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads %d, mc samples %llu, best of %d\n", omp_get_max_threads(),
              static_cast<unsigned long long>(samples), repeats);

  const auto g = GamePoint::make(8.0, 0.3);
  const auto s = StrategyPair::from_squares(6.0, 3.0);
  quantum::SampledPayoffs mc_par{};
  quantum::SampledPayoffs mc_ser{};
  const double t_mc_ser =
      best_of(repeats, [&] { mc_ser = quantum::quantum_payoffs_mc_serial(s, g, samples, 1); });
  const double t_mc_par =
      best_of(repeats, [&] { mc_par = quantum::quantum_payoffs_mc(s, g, samples, 1); });
  report("mc", t_mc_ser, t_mc_par,
          mc_par.u1 == mc_ser.u1 && mc_par.u2 == mc_ser.u2 && mc_par.stderr2 == mc_ser.stderr2);

  const analysis::GridSpec kg{1.0, 50.0, 200};
  const analysis::GridSpec gg{0.0, kQuarterPi, 200};
  analysis::SweepTable sw_par;
  analysis::SweepTable sw_ser;
  const double t_sw_ser = best_of(repeats, [&] { sw_ser = analysis::sweep_serial(kg, gg); });
  const double t_sw_par = best_of(repeats, [&] { sw_par = analysis::sweep(kg, gg); });
  bool same = sw_par.size() == sw_ser.size();
  for (std::size_t i = 0; same && i < sw_par.size(); ++i) {
    same = sw_par[i].u1 == sw_ser[i].u1 && sw_par[i].u2 == sw_ser[i].u2 &&
           sw_par[i].region == sw_ser[i].region;
  }
  report("sweep", t_sw_ser, t_sw_par, same);
  return 0;
}
