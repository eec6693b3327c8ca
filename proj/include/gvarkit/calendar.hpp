#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace gvarkit {

/// A month on the monthly grid all panels share.
struct YearMonth {
    int year = 0;
    int month = 1;  // 1..12

    auto operator<=>(const YearMonth&) const = default;
};

/// Signed number of months from `origin` to `target`.
int months_between(YearMonth origin, YearMonth target);

YearMonth add_months(YearMonth ym, int n);

std::string to_string(YearMonth ym);  // "YYYY-MM"

/// Accepts "YYYY-MM" or a full "YYYY-MM-DD" (day ignored).
std::optional<YearMonth> parse_year_month(std::string_view text);

struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    YearMonth ym() const { return {year, month}; }
    auto operator<=>(const Date&) const = default;
};

std::string to_string(const Date& d);  // "YYYY-MM-DD"

/// Accepts "YYYY-MM-DD"; a bare "YYYY-MM" is taken as the first of the month.
/// Also tolerates an ISO-8601 time suffix ("YYYY-MM-DDThh:mm:ss...").
std::optional<Date> parse_date(std::string_view text);

}  // namespace gvarkit
