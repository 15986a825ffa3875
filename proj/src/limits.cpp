#include "anderson/limits.hpp"

#include <cstdlib>
#include <string>

namespace anderson {

ResourceLimits resource_limits() {
  ResourceLimits lim;
  if (const char* env = std::getenv("ANDERSON_IDS_MAX_SIZE")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) lim.max_dense = lim.max_sturm = v;
    } catch (const std::exception&) {
      // malformed value: keep defaults
    }
  }
  return lim;
}

}  // namespace anderson
