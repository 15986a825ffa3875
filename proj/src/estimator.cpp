#include "anderson/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "anderson/csv.hpp"
#include "anderson/limits.hpp"
#include "anderson/operators.hpp"
#include "anderson/potential.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

namespace {

void check_size(std::int64_t size) {
  if (size < 1) throw DomainError("system size must be >= 1, got " + std::to_string(size));
  const auto guard = resource_limits().max_sturm;
  if (size > guard)
    throw ResourceError("system size " + std::to_string(size) + " exceeds limit " + std::to_string(guard) +
                        " (set ANDERSON_IDS_MAX_SIZE to raise it)");
}

void check_energies(std::span<const double> energies, double zeta) {
  require_sorted(energies);
  for (double x : energies) {
    if (!(x >= -1.0 && x <= zeta + 5.0))
      throw DomainError("energy " + std::to_string(x) + " outside [-1, zeta+5]");
  }
}

struct BlockRule {
  LaplacianKind kind;
  std::int64_t pad;
  CountMode mode;
};

BlockRule rule_for(SeriesVariant v) {
  switch (v) {
    case SeriesVariant::CeilM1: return {LaplacianKind::Free, 0, CountMode::Weak};
    case SeriesVariant::Floor0: return {LaplacianKind::Free, 0, CountMode::Strict};
    case SeriesVariant::Ceil0: return {LaplacianKind::Dirichlet, 0, CountMode::Weak};
    case SeriesVariant::Neumann: return {LaplacianKind::Neumann, 0, CountMode::Strict};
    case SeriesVariant::FloorM1: return {LaplacianKind::Dirichlet, 2, CountMode::Strict};
  }
  return {LaplacianKind::Free, 0, CountMode::Strict};
}

}  // namespace

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {a};
  std::vector<double> out(n);
  const double span = b - a;
  for (std::size_t i = 0; i < n; ++i) out[i] = a + span * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = b;
  return out;
}

std::vector<double> special_energy_points(int n_max) {
  std::vector<double> pts;
  for (int n = 2; n <= n_max; ++n) {
    const double e = beta_inverse(n);
    pts.push_back(e);
    pts.push_back(4.0 - e);
  }
  std::sort(pts.begin(), pts.end());
  // n = 2 gives the same energy on both branches up to rounding.
  pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return b - a < 1e-12; }), pts.end());
  return pts;
}

std::vector<double> make_grid(std::size_t points, double x_min, double x_max, int special_up_to) {
  if (!(x_min <= x_max)) throw DomainError("grid needs x_min <= x_max");
  auto grid = linspace(x_min, x_max, points);
  if (special_up_to >= 2) {
    const auto sp = special_energy_points(special_up_to);
    grid.insert(grid.end(), sp.begin(), sp.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return b - a < 1e-12; }), grid.end());
  return grid;
}

std::vector<double> default_grid() { return make_grid(401, 0.01, 3.99, 12); }

IdsCurve empirical_ids(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::span<const double> energies,
                       CountMode mode, Seed seed) {
  check_size(size);
  check_energies(energies, zeta.value());
  const auto op = anderson_matrix(sample_potential(p, size, seed), zeta);
  const auto counts = counting_curve(op, energies, mode);
  IdsCurve curve;
  curve.energies.assign(energies.begin(), energies.end());
  curve.values.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    curve.values[i] = static_cast<double>(counts[i]) / static_cast<double>(size);
  curve.meta = {p.value(), zeta.value(), size, 1, seed, mode};
  return curve;
}

IdsCurve monte_carlo_ids(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::int64_t reps,
                         std::span<const double> energies, CountMode mode, Seed seed) {
  if (reps < 1) throw DomainError("reps must be >= 1, got " + std::to_string(reps));
  check_size(size);
  check_energies(energies, zeta.value());
  const std::size_t m = energies.size();
  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto one = empirical_ids(p, zeta, size, energies, mode, seed.with_stream(seed.stream + r));
    samples.push_back(one.values);
  }
  IdsCurve curve;
  curve.energies.assign(energies.begin(), energies.end());
  curve.values.assign(m, 0.0);
  // Fixed-order reductions keep the result independent of thread scheduling.
  for (const auto& s : samples)
    for (std::size_t i = 0; i < m; ++i) curve.values[i] += s[i];
  for (auto& v : curve.values) v /= static_cast<double>(reps);
  if (reps > 1) {
    std::vector<double> se(m, 0.0);
    for (const auto& s : samples)
      for (std::size_t i = 0; i < m; ++i) se[i] += (s[i] - curve.values[i]) * (s[i] - curve.values[i]);
    for (auto& v : se) v = std::sqrt(v / static_cast<double>(reps - 1)) / std::sqrt(static_cast<double>(reps));
    curve.stderr_ = std::move(se);
  }
  curve.meta = {p.value(), zeta.value(), size, reps, seed, mode};
  return curve;
}

IdsCurve block_ids(BernoulliParam p, SeriesVariant variant, std::int64_t n, std::span<const double> energies,
                   Seed seed) {
  check_size(n);
  require_sorted(energies);
  const auto gaps = sample_gaps(p, n, seed);
  std::map<std::int64_t, std::int64_t> histogram;
  for (auto y : gaps.gaps) ++histogram[y];
  const auto rule = rule_for(variant);
  const double total = static_cast<double>(gaps.last_one());

  IdsCurve curve;
  curve.energies.assign(energies.begin(), energies.end());
  curve.values.resize(energies.size());
  std::vector<double> se(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    std::vector<std::pair<double, double>> per_value;  // (count per gap, frequency)
    double counted = 0.0;
    for (const auto& [y, freq] : histogram) {
      const auto c = static_cast<double>(laplacian_count(y + rule.pad, rule.kind, energies[i], rule.mode));
      counted += c * static_cast<double>(freq);
      per_value.emplace_back(c, static_cast<double>(freq));
    }
    const double ratio = counted / total;
    curve.values[i] = ratio;
    double ss = 0.0;
    auto it = histogram.begin();
    for (const auto& [c, freq] : per_value) {
      const double resid = c - ratio * static_cast<double>(it->first + 1);
      ss += freq * resid * resid;
      ++it;
    }
    se[i] = std::sqrt(ss) / total;
  }
  curve.stderr_ = std::move(se);
  curve.meta = {p.value(), std::nullopt, gaps.last_one(), 1, seed, rule.mode};
  return curve;
}

void write_curve_csv(std::ostream& os, const IdsCurve& curve,
                     const std::vector<std::pair<std::string, std::string>>& config) {
  write_config_header(os, config);
  os << "energy,value,stderr,p,zeta,L,reps,seed\n";
  const std::string p = format_double(curve.meta.p);
  const std::string zeta = curve.meta.zeta ? format_double(*curve.meta.zeta) : "";
  const std::string size = std::to_string(curve.meta.size);
  const std::string reps = std::to_string(curve.meta.reps);
  const std::string seed = std::to_string(curve.meta.seed.master);
  for (std::size_t i = 0; i < curve.energies.size(); ++i) {
    write_row(os, {format_double(curve.energies[i]), format_double(curve.values[i]),
                   curve.stderr_ ? format_double((*curve.stderr_)[i]) : "", p, zeta, size, reps, seed});
  }
}

}  // namespace anderson
