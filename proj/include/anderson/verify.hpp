#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "anderson/formulas.hpp"
#include "anderson/potential.hpp"
#include "anderson/types.hpp"

namespace anderson {

enum class Status { Pass, Fail, Inconclusive };

const char* to_string(Status s);

/// Outcome of one executable check.
///
/// worst_margin is the smallest signed slack over everything checked:
/// positive means satisfied with room to spare, negative means violated by
/// that amount. The check FAILs iff worst_margin < -tolerance.
struct VerificationReport {
  std::string name;
  Status status = Status::Pass;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  std::string location;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const VerificationReport& r);
std::string summary_table(const std::vector<VerificationReport>& reports);

/// Deliberate corruption used to prove the checks can fail.
struct Fault {
  double bound_scale = 1.0;         // multiplies every reference value (bound, closed form, target)
  bool shuffle_eigenvalues = false;  // permutes the spectrum of H before comparisons
};

/// Statistical acceptance band used throughout: 3 standard errors plus an
/// allowance of 10 eigenvalues out of L for boundary effects.
inline double finite_size_slack(std::int64_t size) { return 10.0 / static_cast<double>(size); }

VerificationReport check_theorem1(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::int64_t reps,
                                  std::span<const double> grid, Seed seed, Fault fault = {});

/// Index-by-index eigenvalue comparisons on one realization (dense oracle):
///   deleted:  lambda_j(H) <= lambda_j(free blocks),        j <= sum Y_i
///   neumann:  lambda_j(Neumann blocks + zeta) <= lambda_j(H), j <= L_n
///   doubled:  lambda_j(doubled chain) <= lambda_j(H),        j <= L_n   (zeta >= 4)
///   padded:   lambda_j(padded Dirichlet blocks) <= lambda_j(doubled chain), all j (zeta >= 4, n >= 2)
/// H is the realization truncated at its last one.
VerificationReport check_interlacing(const PotentialRealization& real, DisorderParam zeta, Fault fault = {});

/// check_interlacing over random realizations with p in {0.2, 0.5}, zeta in {4, 20}, 1 <= L <= max_size.
VerificationReport check_interlacing_suite(std::int64_t trials, std::int64_t max_size, Seed seed,
                                           Fault fault = {});

/// Monte Carlo estimates at both special-energy branches for n = 2..n_max
/// against the closed forms, within 3*stderr + abs_slack (default 10/L).
VerificationReport check_special_energies(BernoulliParam p, DisorderParam zeta, std::int64_t size,
                                          std::int64_t reps, int n_max, Seed seed, double abs_slack = -1.0,
                                          Fault fault = {});

/// sup over grid and x = 4 of |I - I_free| equals p (weak counting), within tol.
VerificationReport check_corollary4(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::int64_t reps,
                                    std::span<const double> grid, Seed seed, double tol = 0.02, Fault fault = {});

/// Tail behaviour near the bottom of the band: containment in the continuous
/// and discontinuous bounds at special energies n_min..n_max and at the extra
/// points, plus an extrapolation of sqrt(x) ln I(x) to x -> 0 compared with
/// pi ln(1-p) within 20%. Points whose expected eigenvalue count is below
/// 100 are reported INCONCLUSIVE instead of being fitted.
VerificationReport check_lifschitz(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::int64_t reps,
                                   Seed seed, int n_min = 6, int n_max = 12,
                                   std::span<const double> extra_points = {}, Fault fault = {});

/// Median of ybar_ratio over reps within 1 +- 3/ln(n) for every n in n_list.
VerificationReport check_lemma5(BernoulliParam p, std::span<const std::int64_t> n_list, std::int64_t reps,
                                Seed seed, Fault fault = {});

/// I(p,zeta,x) + I(1-p,zeta,4+zeta-x) = 1 on the grid.
VerificationReport check_symmetry(BernoulliParam p, DisorderParam zeta, std::int64_t size, std::int64_t reps,
                                  std::span<const double> grid, Seed seed, Fault fault = {});

/// Series identities on an interior grid of `points` energies: the two
/// reflection identities, the crossover of the two upper bounds at x = 2,
/// the floor/ceil ordering and agreement with the closed forms at special
/// energies; all to within tol.
VerificationReport check_series_identities(std::span<const double> p_values, std::size_t points, double tol,
                                           double series_tol = 1e-12, Fault fault = {});

struct ConjectureRow {
  double zeta;
  int n;
  std::string branch;  // "lower" or "upper"
  double energy;
  double estimate;
  double stderr_;
  double closed_form;
  bool proved;
  // estimate - f_p slightly left / right of the special energy (no assertion)
  double fp_left;
  double fp_right;
};

struct ConjectureTable {
  std::vector<ConjectureRow> rows;
  VerificationReport proved_cases;
};

/// Estimates at beta^{-1}(n) and 4 - beta^{-1}(n) for every zeta >= 2 in the list.
/// Rows covered by a proof (upper branch with zeta >= 4 - beta^{-1}(n), or
/// zeta >= 4) are asserted in proved_cases; the rest are evidence only.
ConjectureTable conjecture_experiment(BernoulliParam p, int n, std::span<const double> zeta_list, std::int64_t size,
                                      std::int64_t reps, Seed seed);

}  // namespace anderson
