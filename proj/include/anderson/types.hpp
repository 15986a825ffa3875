#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace anderson {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (x outside the band, p outside (0,1), zeta below a hypothesis).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a request would exceed a configured size guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability that a site carries potential 1. Always in the open interval (0,1).
class BernoulliParam {
 public:
  explicit BernoulliParam(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0))
      throw DomainError("Bernoulli parameter p must satisfy 0 < p < 1, got " + std::to_string(p));
  }
  double value() const { return p_; }
  double q() const { return 1.0 - p_; }
  BernoulliParam complement() const { return BernoulliParam(1.0 - p_); }

 private:
  double p_;
};

/// Coupling constant zeta >= 0 of the potential.
class DisorderParam {
 public:
  explicit DisorderParam(double zeta) : zeta_(zeta) {
    if (!(zeta >= 0.0)) throw DomainError("disorder zeta must be >= 0, got " + std::to_string(zeta));
  }
  double value() const { return zeta_; }

  // Band separation hypothesis used by every bound.
  void require_strong() const {
    if (zeta_ < 4.0) throw DomainError("this check requires zeta >= 4, got " + std::to_string(zeta_));
  }

 private:
  double zeta_;
};

/// Seed for a reproducible random stream: a master key plus a sub-stream index.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  Seed with_stream(std::uint64_t s) const { return Seed{master, s}; }
  friend bool operator==(const Seed&, const Seed&) = default;
};

enum class CountMode { Strict, Weak };

inline const char* to_string(CountMode m) { return m == CountMode::Strict ? "strict" : "weak"; }

}  // namespace anderson
