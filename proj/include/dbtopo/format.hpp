#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dbtopo {

/// Shortest decimal text that parses back to exactly `value`; "inf" for +infinity.
std::string format_value(double value);

/// Strict parse of a whole field; accepts "inf"/"+inf". Returns false on any junk.
bool parse_double(std::string_view text, double& out);

/// Strips spaces, tabs and a trailing carriage return.
std::string_view trim(std::string_view s);
/// Comma-separated fields, each trimmed. No quoting.
std::vector<std::string_view> split_fields(std::string_view line);

}  // namespace dbtopo
