#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "anderson/types.hpp"

namespace anderson {

/// A finite Bernoulli(p) potential V(1..L), one byte (0 or 1) per site.
struct PotentialRealization {
  double p = 0.0;
  std::vector<std::uint8_t> values;

  std::size_t length() const { return values.size(); }
  std::size_t ones() const;
};

/// Runs of zeros between potential sites.
///
/// gaps[i] is the number of zeros immediately before the (i+1)-th one,
/// ones_positions[i] its 1-based site index, and trailing_zeros the zeros after
/// the last one (not a gap). For every realization
///   ones_positions.back() == gaps.size() + sum(gaps).
struct GapStatistics {
  std::vector<std::int64_t> gaps;
  std::vector<std::int64_t> ones_positions;
  std::int64_t y_max = 0;
  std::int64_t trailing_zeros = 0;

  std::size_t count() const { return gaps.size(); }
  /// Position of the last one (0 when there are none).
  std::int64_t last_one() const { return ones_positions.empty() ? 0 : ones_positions.back(); }
  std::int64_t gap_sum() const;
};

PotentialRealization sample_potential(BernoulliParam p, std::int64_t length, Seed seed);

GapStatistics gap_statistics(const PotentialRealization& real);

/// Inverse of gap_statistics on the bit sequence.
std::vector<std::uint8_t> reconstruct_bits(const GapStatistics& gaps);

/// n i.i.d. geometric gaps, P(Y = k) = (1-p)^k p, drawn as floor(ln U / ln(1-p)).
GapStatistics sample_gaps(BernoulliParam p, std::int64_t n, Seed seed);

/// y_max * |ln(1-p)| / ln(n) for a fresh sample of n gaps.
double ybar_ratio(BernoulliParam p, std::int64_t n, Seed seed);

/// ASCII '0'/'1' per site.
std::string to_bit_string(const PotentialRealization& real);
PotentialRealization from_bit_string(std::string_view bits, double p = 0.5);

}  // namespace anderson
