#include "scimetrics/date.hpp"

#include <charconv>
#include <cmath>

#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"

namespace scim {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::unprocessable: return "unprocessable";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::unavailable: return "unavailable";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

namespace {

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

[[noreturn]] void bad_date(std::string_view text) {
  throw Error(ErrorCode::invalid_argument,
              "invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') bad_date(text);
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d))
    bad_date(text);
  std::chrono::year_month_day ymd{std::chrono::year{y},
                                  std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad_date(text);
  return Date{ymd};
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date make_date(int year, unsigned month, unsigned day) {
  return Date{std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day}};
}

int year_of(Date d) {
  return static_cast<int>(std::chrono::year_month_day{d}.year());
}

int months_between(Date from, Date to) {
  std::chrono::year_month_day a{from}, b{to};
  int months = (static_cast<int>(b.year()) - static_cast<int>(a.year())) * 12 +
               (static_cast<int>(static_cast<unsigned>(b.month())) -
                static_cast<int>(static_cast<unsigned>(a.month())));
  if (to >= from) {
    if (b.day() < a.day()) --months;
  } else {
    if (b.day() > a.day()) ++months;
  }
  return months;
}

double years_between(Date from, Date to) {
  return static_cast<double>((to - from).count()) / 365.25;
}

int whole_years_between(Date from, Date to) {
  return static_cast<int>(std::floor(years_between(from, to)));
}

Date add_months(Date d, int months) {
  using namespace std::chrono;
  year_month_day ymd{d};
  auto ym = year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
  auto end_day = (ym / std::chrono::last).day();
  auto day = ymd.day() > end_day ? end_day : ymd.day();
  return Date{ym / day};
}

MonthWindow parse_month_window(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::invalid_argument,
                "invalid month window '" + std::string(text) + "' (expected a:b or a:)");
  MonthWindow w;
  auto lhs = trim(text.substr(0, colon));
  auto rhs = trim(text.substr(colon + 1));
  int v = 0;
  if (!lhs.empty()) {
    if (!parse_int(lhs, v))
      throw Error(ErrorCode::invalid_argument, "invalid month '" + std::string(lhs) + "'");
    w.start = v;
  }
  if (!rhs.empty()) {
    if (!parse_int(rhs, v))
      throw Error(ErrorCode::invalid_argument, "invalid month '" + std::string(rhs) + "'");
    w.end = v;
  }
  return w;
}

DateRange parse_date_range(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::invalid_argument,
                "invalid date range '" + std::string(text) + "' (expected FROM:TO)");
  DateRange r;
  auto lhs = trim(text.substr(0, colon));
  auto rhs = trim(text.substr(colon + 1));
  if (!lhs.empty()) r.from = parse_date(lhs);
  if (!rhs.empty()) r.to = parse_date(rhs);
  return r;
}

}  // namespace scim
