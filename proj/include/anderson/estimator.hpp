#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anderson/formulas.hpp"
#include "anderson/types.hpp"

namespace anderson {

struct CurveMeta {
  double p = 0.0;
  std::optional<double> zeta;
  std::int64_t size = 0;  // L, or L_n for block curves
  std::int64_t reps = 1;
  Seed seed{};
  CountMode mode = CountMode::Strict;
};

/// Empirical integrated density of states on an energy grid.
struct IdsCurve {
  std::vector<double> energies;
  std::vector<double> values;
  std::optional<std::vector<double>> stderr_;
  CurveMeta meta;

  double stderr_at(std::size_t i) const { return stderr_ ? (*stderr_)[i] : 0.0; }
};

/// n points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Both special energies beta^{-1}(n) and 4 - beta^{-1}(n) for n = 2..n_max, ascending, x = 2 once.
std::vector<double> special_energy_points(int n_max);

/// Uniform grid merged with special energies (n_max < 2 adds none); sorted, points within 1e-12 merged.
std::vector<double> make_grid(std::size_t points, double x_min, double x_max, int special_up_to);

/// 401 points on [0.01, 3.99] plus special energies up to n = 12.
std::vector<double> default_grid();

/// count(x)/L for a single realization of length L.
IdsCurve empirical_ids(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::span<const double> energies,
                       CountMode mode, Seed seed);

/// Mean over reps realizations using streams seed.stream, seed.stream+1, ...;
/// stderr = sample std / sqrt(reps) (absent for reps == 1).
IdsCurve monte_carlo_ids(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::int64_t reps,
                         std::span<const double> energies, CountMode mode, Seed seed);

/// Block-operator IDS of one of the five series variants from n sampled gaps,
/// normalized by L_n. The stderr is that of a ratio estimator over gaps.
IdsCurve block_ids(BernoulliParam p, SeriesVariant variant, std::int64_t n, std::span<const double> energies,
                   Seed seed);

/// CSV with header "energy,value,stderr,p,zeta,L,reps,seed", preceded by "# key=value" config lines.
void write_curve_csv(std::ostream& os, const IdsCurve& curve,
                     const std::vector<std::pair<std::string, std::string>>& config);

}  // namespace anderson
