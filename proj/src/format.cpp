#include "scimetrics/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace scim {

std::string format9(double value) {
  if (!std::isfinite(value)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double round9(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format9(value).c_str(), nullptr);
}

std::string format_cell(const std::optional<double>& value) {
  return value ? format9(*value) : std::string{};
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    auto pos = text.find(sep, begin);
    out.emplace_back(text.substr(begin, pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                           text.front() == '\r' || text.front() == '\n'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r' || text.back() == '\n'))
    text.remove_suffix(1);
  return text;
}

}  // namespace scim
