#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "qcournot/analysis.hpp"

namespace qcournot::csv {

inline constexpr std::string_view kSweepHeader =
    "k,inv_k,gamma,x1_sq,x2_sq,x1_sq_over_k,x2_sq_over_k,U1,U2,U1_over_k2,U2_over_k2,"
    "sum_over_k2,diff_over_k2,branch,region";

inline constexpr std::string_view kRegionHeader = "k,inv_k,gamma,cos_2gamma,branch,region";

/// Shortest "%.{digits}g" rendering; negative zero prints as 0.
std::string format_number(double v, int digits);

void write_sweep(std::ostream& out, const analysis::SweepTable& table, int digits);

/// Region columns only, with cos(2 gamma) for the (1/k, cos 2g) plane.
void write_regions(std::ostream& out, const analysis::SweepTable& table, int digits);

}  // namespace qcournot::csv
