#include <algorithm>
#include <array>
#include <cmath>

#include "anderson/spectral.hpp"
#include "sturm_detail.hpp"

namespace anderson {

namespace {

constexpr std::size_t kLanes = 8;

// Runs the pivot recurrence for kLanes energies at once. Each lane performs
// exactly the operations of sturm_count, so counts match it bit for bit.
void count_lane_group(const TridiagonalOperator& op, const detail::PivotRule& rule, const double* x,
                      std::int64_t* out) {
  const std::size_t n = op.size();
  const double* diag = op.diag.data();
  const double* off = op.offdiag.data();
  const double pivmin = rule.pivmin;
  const double repl = rule.replacement;

  std::array<double, kLanes> d{};
  std::array<std::int64_t, kLanes> cnt{};
  for (std::size_t l = 0; l < kLanes; ++l) {
    double t = diag[0] - x[l];
    t = std::abs(t) < pivmin ? repl : t;
    cnt[l] = t < 0.0;
    d[l] = t;
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double a = diag[j];
    const double b = off[j - 1];
    const double b2 = b * b;
#pragma omp simd
    for (std::size_t l = 0; l < kLanes; ++l) {
      double t = (a - x[l]) - b2 / d[l];
      t = std::abs(t) < pivmin ? repl : t;
      cnt[l] += t < 0.0;
      d[l] = t;
    }
  }
  for (std::size_t l = 0; l < kLanes; ++l) out[l] = cnt[l];
}

void run_group(const TridiagonalOperator& op, const detail::PivotRule& rule, std::span<const double> energies,
               std::size_t g, std::vector<std::int64_t>& out) {
  const std::size_t m = energies.size();
  const std::size_t begin = g * kLanes;
  std::array<double, kLanes> x{};
  for (std::size_t l = 0; l < kLanes; ++l) x[l] = energies[std::min(begin + l, m - 1)];
  std::array<std::int64_t, kLanes> c{};
  count_lane_group(op, rule, x.data(), c.data());
  for (std::size_t l = 0; l < kLanes && begin + l < m; ++l) out[begin + l] = c[l];
}

}  // namespace

std::vector<std::int64_t> counting_curve_lanes(const TridiagonalOperator& op, std::span<const double> energies,
                                               CountMode mode) {
  require_sorted(energies);
  std::vector<std::int64_t> out(energies.size(), 0);
  if (energies.empty() || op.size() == 0) return out;
  const detail::PivotRule rule(op, mode);
  const std::size_t groups = (energies.size() + kLanes - 1) / kLanes;
  for (std::size_t g = 0; g < groups; ++g) run_group(op, rule, energies, g, out);
  return out;
}

std::vector<std::int64_t> counting_curve(const TridiagonalOperator& op, std::span<const double> energies,
                                         CountMode mode) {
  require_sorted(energies);
  std::vector<std::int64_t> out(energies.size(), 0);
  if (energies.empty() || op.size() == 0) return out;
  const detail::PivotRule rule(op, mode);
  const auto groups = static_cast<std::int64_t>((energies.size() + kLanes - 1) / kLanes);
  const bool worth_threads = op.size() * energies.size() >= (1u << 16);
#pragma omp parallel for schedule(dynamic, 1) if (worth_threads)
  for (std::int64_t g = 0; g < groups; ++g) run_group(op, rule, energies, static_cast<std::size_t>(g), out);
  return out;
}

}  // namespace anderson
