#include "qcournot/sweep_csv.hpp"

#include <cmath>
#include <cstdio>

namespace qcournot::csv {

namespace {

std::string region_field(const analysis::SweepRow& row) {
  return row.region ? std::string(1, analysis::to_char(*row.region)) : std::string("-");
}

}  // namespace

std::string format_number(double v, int digits) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_sweep(std::ostream& out, const analysis::SweepTable& table, int digits) {
  out << kSweepHeader << '\n';
  for (const auto& r : table) {
    const double k2 = r.k * r.k;
    const auto f = [digits](double v) { return format_number(v, digits); };
    out << f(r.k) << ',' << f(1.0 / r.k) << ',' << f(r.gamma) << ',' << f(r.x1_sq) << ','
        << f(r.x2_sq) << ',' << f(r.x1_sq / r.k) << ',' << f(r.x2_sq / r.k) << ',' << f(r.u1)
        << ',' << f(r.u2) << ',' << f(r.u1 / k2) << ',' << f(r.u2 / k2) << ',' << f(r.sum / k2)
        << ',' << f(r.diff / k2) << ',' << equilibrium::to_string(r.branch) << ','
        << region_field(r) << '\n';
  }
}

void write_regions(std::ostream& out, const analysis::SweepTable& table, int digits) {
  out << kRegionHeader << '\n';
  for (const auto& r : table) {
    const auto f = [digits](double v) { return format_number(v, digits); };
    out << f(r.k) << ',' << f(1.0 / r.k) << ',' << f(r.gamma) << ',' << f(std::cos(2.0 * r.gamma))
        << ',' << equilibrium::to_string(r.branch) << ',' << region_field(r) << '\n';
  }
}

}  // namespace qcournot::csv
