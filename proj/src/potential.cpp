#include "anderson/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anderson/rng.hpp"

namespace anderson {

std::size_t PotentialRealization::ones() const {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::uint8_t{1}));
}

std::int64_t GapStatistics::gap_sum() const {
  return std::accumulate(gaps.begin(), gaps.end(), std::int64_t{0});
}

PotentialRealization sample_potential(BernoulliParam p, std::int64_t length, Seed seed) {
  if (length <= 0) throw DomainError("potential length must be >= 1, got " + std::to_string(length));
  PotentialRealization real{p.value(), std::vector<std::uint8_t>(static_cast<std::size_t>(length))};
  const CounterRng rng(seed);
  const double pv = p.value();
  for (std::int64_t j = 0; j < length; ++j) {
    const double u = static_cast<double>(rng.at(static_cast<std::uint64_t>(j)) >> 11) * 0x1.0p-53;
    real.values[static_cast<std::size_t>(j)] = u < pv ? 1 : 0;
  }
  return real;
}

GapStatistics gap_statistics(const PotentialRealization& real) {
  GapStatistics out;
  std::int64_t run = 0;
  std::int64_t site = 0;
  for (auto v : real.values) {
    ++site;
    if (v) {
      out.gaps.push_back(run);
      out.ones_positions.push_back(site);
      out.y_max = std::max(out.y_max, run);
      run = 0;
    } else {
      ++run;
    }
  }
  out.trailing_zeros = run;
  return out;
}

std::vector<std::uint8_t> reconstruct_bits(const GapStatistics& gaps) {
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(gaps.last_one() + gaps.trailing_zeros));
  for (auto y : gaps.gaps) {
    bits.insert(bits.end(), static_cast<std::size_t>(y), std::uint8_t{0});
    bits.push_back(1);
  }
  bits.insert(bits.end(), static_cast<std::size_t>(gaps.trailing_zeros), std::uint8_t{0});
  return bits;
}

GapStatistics sample_gaps(BernoulliParam p, std::int64_t n, Seed seed) {
  if (n <= 0) throw DomainError("number of gaps must be >= 1, got " + std::to_string(n));
  CounterRng rng(seed);
  const double lq = std::log(p.q());
  GapStatistics out;
  out.gaps.resize(static_cast<std::size_t>(n));
  out.ones_positions.resize(static_cast<std::size_t>(n));
  std::int64_t pos = 0;
  for (std::size_t i = 0; i < out.gaps.size(); ++i) {
    const auto y = static_cast<std::int64_t>(std::floor(std::log(rng.uniform_open()) / lq));
    out.gaps[i] = y;
    pos += y + 1;
    out.ones_positions[i] = pos;
    out.y_max = std::max(out.y_max, y);
  }
  return out;
}

double ybar_ratio(BernoulliParam p, std::int64_t n, Seed seed) {
  if (n < 2) throw DomainError("ybar_ratio needs n >= 2, got " + std::to_string(n));
  const auto g = sample_gaps(p, n, seed);
  return static_cast<double>(g.y_max) * std::abs(std::log(p.q())) / std::log(static_cast<double>(n));
}

std::string to_bit_string(const PotentialRealization& real) {
  std::string s(real.values.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i)
    if (real.values[i]) s[i] = '1';
  return s;
}

PotentialRealization from_bit_string(std::string_view bits, double p) {
  PotentialRealization real{p, {}};
  real.values.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("bit string may only contain '0' and '1'");
    real.values.push_back(c == '1' ? 1 : 0);
  }
  return real;
}

}  // namespace anderson
