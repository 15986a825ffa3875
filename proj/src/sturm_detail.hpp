#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "anderson/operators.hpp"
#include "anderson/types.hpp"

namespace anderson::detail {

// Zero-pivot safeguard shared by the serial and lane kernels so that both
// produce identical pivot sequences.
struct PivotRule {
  double pivmin;
  double replacement;

  PivotRule(const TridiagonalOperator& op, CountMode mode) {
    double bmax2 = 1.0;
    for (double b : op.offdiag) bmax2 = std::max(bmax2, b * b);
    pivmin = std::numeric_limits<double>::min() * bmax2;
    double scale = op.max_norm();
    if (scale == 0.0) scale = 1.0;
    const double nudge = std::numeric_limits<double>::epsilon() * scale;
    replacement = mode == CountMode::Strict ? nudge : -nudge;
  }

  double fix(double d) const { return std::abs(d) < pivmin ? replacement : d; }
};

}  // namespace anderson::detail
