#include "anderson/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace anderson {

namespace {

constexpr long long kMaxSeriesTerms = 100'000'000;

void require_band(double x, bool allow_four) {
  const bool ok = allow_four ? (x > 0.0 && x <= 4.0) : (x > 0.0 && x < 4.0);
  if (!ok) {
    throw DomainError(std::string("energy must lie in ") + (allow_four ? "(0,4]" : "(0,4)") +
                      ", got " + std::to_string(x));
  }
}

// (1-p)^b / (1 - (1-p)^b), the geometric kernel shared by f_p and the Lifschitz bounds.
double geometric_ratio(BernoulliParam p, double b) {
  const double lq = std::log(p.q());
  return std::exp(b * lq) / -std::expm1(b * lq);
}

long long exponent(SeriesVariant v, long long k, double b) {
  switch (v) {
    case SeriesVariant::CeilM1: return snapped_ceil(static_cast<double>(k) * b) - 1;
    case SeriesVariant::FloorM1: return snapped_floor(static_cast<double>(k) * b) - 1;
    case SeriesVariant::Ceil0: return snapped_ceil(static_cast<double>(k) * b);
    case SeriesVariant::Floor0: return snapped_floor(static_cast<double>(k) * b);
    case SeriesVariant::Neumann: return snapped_floor(static_cast<double>(k - 1) * b) + 1;
  }
  return 0;
}

}  // namespace

double beta(double x) {
  require_band(x, true);
  return std::numbers::pi / (2.0 * std::asin(std::sqrt(x) / 2.0));
}

double beta_inverse(double b) {
  if (!(b >= 1.0)) throw DomainError("beta_inverse requires b >= 1, got " + std::to_string(b));
  const double s = std::sin(std::numbers::pi / (2.0 * b));
  return 4.0 * s * s;
}

const char* to_string(SeriesVariant v) {
  switch (v) {
    case SeriesVariant::CeilM1: return "ceil_m1";
    case SeriesVariant::FloorM1: return "floor_m1";
    case SeriesVariant::Ceil0: return "ceil_0";
    case SeriesVariant::Floor0: return "floor_0";
    case SeriesVariant::Neumann: return "neumann";
  }
  return "?";
}

SeriesVariant series_variant_from_string(const std::string& name) {
  for (auto v : {SeriesVariant::CeilM1, SeriesVariant::FloorM1, SeriesVariant::Ceil0,
                 SeriesVariant::Floor0, SeriesVariant::Neumann}) {
    if (name == to_string(v)) return v;
  }
  throw DomainError("unknown series variant '" + name +
                    "' (expected ceil_m1, floor_m1, ceil_0, floor_0 or neumann)");
}

long long snapped_floor(double y) {
  const double r = std::round(y);
  if (std::abs(y - r) < kIntegerSnap) return static_cast<long long>(r);
  return static_cast<long long>(std::floor(y));
}

long long snapped_ceil(double y) {
  const double r = std::round(y);
  if (std::abs(y - r) < kIntegerSnap) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(y));
}

long long series_terms(BernoulliParam p, double b, double tol) {
  if (!(tol > 0.0)) throw DomainError("series tolerance must be > 0, got " + std::to_string(tol));
  const double lq = std::log(p.q());
  const double log_denom = std::log(-std::expm1(b * lq));
  auto tail_log = [&](long long k) {
    return std::log(p.value()) + (static_cast<double>(k) * b - 2.0) * lq - log_denom;
  };
  const double target = std::log(tol);
  // Solve tail_log(K) < target for K, then fix up rounding.
  const double kreal = (2.0 + (target - std::log(p.value()) + log_denom) / lq) / b;
  long long k = std::max<long long>(1, static_cast<long long>(std::floor(kreal)));
  if (k > kMaxSeriesTerms)
    throw DomainError("series truncation would need more than 1e8 terms (p too small)");
  while (k > 1 && tail_log(k - 1) < target) --k;
  while (!(tail_log(k) < target)) ++k;
  return k;
}

double bound_series(BernoulliParam p, double x, const BoundSeriesSpec& spec) {
  require_band(x, true);
  if (!(spec.tol > 0.0))
    throw DomainError("series tolerance must be > 0, got " + std::to_string(spec.tol));
  if (x == 4.0) {
    switch (spec.variant) {
      case SeriesVariant::CeilM1:
      case SeriesVariant::FloorM1: return 1.0;
      default: return p.q();
    }
  }
  const double b = beta(x);
  const long long terms = series_terms(p, b, spec.tol);
  const double q = p.q();
  double sum = 0.0;
  for (long long k = 1; k <= terms; ++k) {
    sum += std::pow(q, static_cast<double>(exponent(spec.variant, k, b)));
  }
  return p.value() * sum;
}

Bounds theorem1_bounds(BernoulliParam p, double x, double tol) {
  require_band(x, false);
  const double lower = bound_series(p, x, {SeriesVariant::CeilM1, tol});
  const double neumann = bound_series(p, x, {SeriesVariant::Neumann, tol});
  const double padded = bound_series(p, x, {SeriesVariant::FloorM1, tol});
  return {lower, std::min(neumann, padded)};
}

double special_ids_lower(BernoulliParam p, int n) {
  if (n < 2) throw DomainError("special energies are indexed by n >= 2");
  const double qn = std::pow(p.q(), n);
  return (p.value() / p.q()) * qn / (1.0 - qn);
}

double special_ids_upper(BernoulliParam p, int n) {
  if (n < 2) throw DomainError("special energies are indexed by n >= 2");
  const double qn = std::pow(p.q(), n);
  return p.q() - p.value() * qn / (1.0 - qn);
}

std::vector<SpecialEnergy> special_energies(BernoulliParam p, int n_max) {
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  std::vector<SpecialEnergy> out;
  out.reserve(static_cast<std::size_t>(n_max - 1));
  for (int n = 2; n <= n_max; ++n) {
    const double e = beta_inverse(n);
    out.push_back({n, e, 4.0 - e, special_ids_lower(p, n), special_ids_upper(p, n)});
  }
  return out;
}

double envelope_fp(BernoulliParam p, double x) {
  require_band(x, false);
  if (x <= 2.0) return (p.value() / p.q()) * geometric_ratio(p, beta(x));
  return p.q() - p.value() * geometric_ratio(p, beta(4.0 - x));
}

double free_ids(double x) {
  if (x <= 0.0) return 0.0;
  if (x > 4.0) return 1.0;
  return 1.0 / beta(x);
}

Bounds lifschitz_bounds(BernoulliParam p, double x, BandEdge edge) {
  if (!(x > 0.0 && x <= 2.0))
    throw DomainError("Lifschitz bounds need 0 < x <= 2, got " + std::to_string(x));
  const double g = p.value() * geometric_ratio(p, beta(x));
  const double q = p.q();
  if (edge == BandEdge::Lower) return {g, g / (q * q)};
  return {q * g, g / q};
}

double lifschitz_constant(BernoulliParam p) { return std::numbers::pi * std::log(p.q()); }

BandSymmetryImage band_symmetry_image(BernoulliParam p, DisorderParam zeta, double x) {
  const double offset = 4.0 + zeta.value();
  return {1.0 - p.value(), offset - x, -1.0, offset};
}

}  // namespace anderson
