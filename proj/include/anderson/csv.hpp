#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace anderson {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Comment lines "# key=value" echoing a run configuration.
void write_config_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& config);

/// Joins already-formatted fields with commas and terminates the row.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace anderson
