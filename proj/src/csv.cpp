#include "anderson/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace anderson {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_config_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& config) {
  for (const auto& [k, v] : config) os << "# " << k << '=' << v << '\n';
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace anderson
