#pragma once

#include <cstdint>

namespace anderson {

/// Size guards for the dense oracle and the Sturm-based estimators.
/// ANDERSON_IDS_MAX_SIZE, when set to a positive integer, replaces both.
struct ResourceLimits {
  std::int64_t max_dense = 5000;
  std::int64_t max_sturm = 50'000'000;
};

ResourceLimits resource_limits();

}  // namespace anderson
