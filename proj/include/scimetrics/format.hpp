#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scim {

// Every float leaving the library goes through these two functions so the
// CLI, the C API and the HTTP service print identical digits.

/// `%.9g` text for finite values, empty string for non-finite.
std::string format9(double value);
/// The double nearest to `format9(value)`.
double round9(double value);

std::string format_cell(const std::optional<double>& value);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace scim
