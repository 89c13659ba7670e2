#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace scim {

using Date = std::chrono::sys_days;

/// Parses `YYYY-MM-DD`; throws Error(invalid_argument) on anything else.
Date parse_date(std::string_view text);
std::string format_date(Date d);

Date make_date(int year, unsigned month, unsigned day);
int year_of(Date d);

/// Completed calendar months from `from` to `to` (negative when `to` is
/// earlier). Jan 15 -> Feb 14 is 0 months, Jan 15 -> Feb 15 is 1.
int months_between(Date from, Date to);

/// Completed publication-relative years (365.25-day years).
int whole_years_between(Date from, Date to);
double years_between(Date from, Date to);

Date add_months(Date d, int months);

// Half-open date interval [from, to); an absent bound is unbounded.
struct DateRange {
  std::optional<Date> from;
  std::optional<Date> to;

  bool contains(Date d) const noexcept {
    return (!from || d >= *from) && (!to || d < *to);
  }
  bool unbounded() const noexcept { return !from && !to; }
};

// Half-open month interval [start, end) measured from publication.
struct MonthWindow {
  int start = 0;
  std::optional<int> end;

  bool contains(int month) const noexcept {
    return month >= start && (!end || month < *end);
  }
  bool degenerate() const noexcept { return end && *end <= start; }
};

/// Parses `a:b` or `a:` into a month window.
MonthWindow parse_month_window(std::string_view text);
/// Parses `YYYY-MM-DD:YYYY-MM-DD` (either side may be empty).
DateRange parse_date_range(std::string_view text);

}  // namespace scim
