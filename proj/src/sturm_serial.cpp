#include <algorithm>
#include <cmath>
#include <string>

#include "anderson/formulas.hpp"
#include "anderson/spectral.hpp"
#include "sturm_detail.hpp"

namespace anderson {

std::int64_t sturm_count(const TridiagonalOperator& op, double x, CountMode mode) {
  const std::size_t n = op.size();
  if (n == 0) return 0;
  const detail::PivotRule rule(op, mode);
  double d = rule.fix(op.diag[0] - x);
  std::int64_t count = d < 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double b = op.offdiag[j - 1];
    d = rule.fix((op.diag[j] - x) - (b * b) / d);
    count += d < 0.0;
  }
  return count;
}

void require_sorted(std::span<const double> energies) {
  if (!std::is_sorted(energies.begin(), energies.end()))
    throw DomainError("energies must be sorted ascending");
}

std::vector<std::int64_t> counting_curve_serial(const TridiagonalOperator& op, std::span<const double> energies,
                                                CountMode mode) {
  require_sorted(energies);
  std::vector<std::int64_t> out;
  out.reserve(energies.size());
  for (double x : energies) out.push_back(sturm_count(op, x, mode));
  return out;
}

std::int64_t laplacian_count(std::int64_t n, LaplacianKind kind, double x, CountMode mode) {
  if (n <= 0) return 0;
  const bool weak = mode == CountMode::Weak;
  if (x <= 0.0) {
    // Only the Neumann ground state sits at 0; everything else is positive.
    return (weak && x == 0.0 && kind == LaplacianKind::Neumann) ? 1 : 0;
  }
  if (x > 4.0) return n;
  const double b = beta(x);
  const double nd = static_cast<double>(n);
  switch (kind) {
    case LaplacianKind::Free: {
      const double r = (nd + 1.0) / b;
      return std::min<std::int64_t>(n, weak ? snapped_floor(r) : snapped_ceil(r) - 1);
    }
    case LaplacianKind::Dirichlet: {
      const double r = nd / b;
      return std::min<std::int64_t>(n, weak ? snapped_floor(r) : snapped_ceil(r) - 1);
    }
    case LaplacianKind::Neumann: {
      const double r = nd / b;
      return std::min<std::int64_t>(n, weak ? snapped_floor(r) + 1 : snapped_ceil(r));
    }
  }
  return 0;
}

std::int64_t block_count(const BlockOperatorSpec& spec, double x, CountMode mode) {
  std::int64_t total = 0;
  for (const auto& b : spec.blocks) {
    if (b.boundary) continue;
    total += laplacian_count(b.size, b.kind, x - b.diag_shift, mode);
  }
  return total;
}

}  // namespace anderson
