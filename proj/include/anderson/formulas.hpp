#pragma once

// Closed-form quantities for the first band [0,4] of the Anderson-Bernoulli
// operator -Delta + zeta*V on the half line.

#include <vector>

#include "anderson/types.hpp"

namespace anderson {

/// beta(x) = pi / (2 asin(sqrt(x)/2)) on (0,4]. Strictly decreasing, beta(4) = 1.
double beta(double x);

/// 4 sin^2(pi / (2b)) for b >= 1; inverse of beta.
double beta_inverse(double b);

/// Exponent rule of one of the five geometric-type series
///   p * sum_{k>=1} (1-p)^{e(k)}.
enum class SeriesVariant {
  CeilM1,   // ceil(k beta) - 1       : IDS of the deleted-site free blocks, counted with <=
  FloorM1,  // floor(k beta) - 1      : IDS of the padded Dirichlet blocks, counted with <
  Ceil0,    // ceil(k beta)           : IDS of Dirichlet blocks, counted with <=
  Floor0,   // floor(k beta)          : IDS of free blocks, counted with <
  Neumann,  // floor((k-1) beta) + 1  : IDS of Neumann blocks, counted with <
};

const char* to_string(SeriesVariant v);
SeriesVariant series_variant_from_string(const std::string& name);

struct BoundSeriesSpec {
  SeriesVariant variant = SeriesVariant::CeilM1;
  double tol = 1e-12;
};

/// Distance below which k*beta is treated as the nearby integer.
inline constexpr double kIntegerSnap = 1e-9;

/// floor / ceil with near-integer snapping.
long long snapped_floor(double y);
long long snapped_ceil(double y);

/// Series value for energy x in (0,4]. At x = 4 (beta = 1) the full geometric
/// sum is returned in closed form.
double bound_series(BernoulliParam p, double x, const BoundSeriesSpec& spec);

/// Number of terms K kept by the truncation rule
///   p (1-p)^{K beta - 2} / (1 - (1-p)^beta) < tol.
long long series_terms(BernoulliParam p, double b, double tol);

struct Bounds {
  double lower;
  double upper;
};

/// lower = CeilM1 series; upper = min(Neumann, FloorM1). Valid for every zeta >= 4, x in (0,4).
Bounds theorem1_bounds(BernoulliParam p, double x, double tol = 1e-12);

struct SpecialEnergy {
  int n;
  double lower;  // beta^{-1}(n)
  double upper;  // 4 - beta^{-1}(n)
  double ids_lower;
  double ids_upper;
};

/// Energies where lower and upper bounds meet, for n = 2..n_max, with their IDS values.
std::vector<SpecialEnergy> special_energies(BernoulliParam p, int n_max);

/// IDS value at beta^{-1}(n).
double special_ids_lower(BernoulliParam p, int n);
/// IDS value at 4 - beta^{-1}(n).
double special_ids_upper(BernoulliParam p, int n);

/// Piecewise smooth interpolant through all special-energy values.
double envelope_fp(BernoulliParam p, double x);

/// IDS of the free Laplacian: 1/beta(x) on (0,4], clamped to 0 and 1 outside.
double free_ids(double x);

enum class BandEdge { Lower, Upper };

/// Continuous Lifschitz-tail bounds at distance x in (0,2] from the given band edge.
/// Lower edge bounds I(x); upper edge bounds (1-p) - I(4-x).
Bounds lifschitz_bounds(BernoulliParam p, double x, BandEdge edge);

/// pi * ln(1-p).
double lifschitz_constant(BernoulliParam p);

/// Image of (p, zeta, x) under the sign-flip unitary (U phi)(j) = (-1)^j phi(j):
///   IDS(p, zeta, x) = 1 - IDS(1-p, zeta, 4 + zeta - x).
struct BandSymmetryImage {
  double p;
  double x;
  // x' = scale * x + offset
  double scale;
  double offset;

  double map_energy(double x_in) const { return scale * x_in + offset; }
  double map_ids(double ids_image) const { return 1.0 - ids_image; }
};

BandSymmetryImage band_symmetry_image(BernoulliParam p, DisorderParam zeta, double x);

}  // namespace anderson
