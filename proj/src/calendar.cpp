#include "gvarkit/calendar.hpp"

#include <charconv>
#include <cstdio>

namespace gvarkit {

namespace {

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool valid_month(int m) { return m >= 1 && m <= 12; }

int days_in_month(int year, int month) {
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return month == 2 && leap ? 29 : days[month - 1];
}

}  // namespace

int months_between(YearMonth origin, YearMonth target) {
    return (target.year - origin.year) * 12 + (target.month - origin.month);
}

YearMonth add_months(YearMonth ym, int n) {
    int linear = ym.year * 12 + (ym.month - 1) + n;
    int year = linear / 12;
    int month = linear % 12;
    if (month < 0) {
        month += 12;
        year -= 1;
    }
    return {year, month + 1};
}

std::string to_string(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

std::optional<YearMonth> parse_year_month(std::string_view text) {
    if (auto d = parse_date(text)) return d->ym();
    return std::nullopt;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::optional<Date> parse_date(std::string_view text) {
    // Strip a time-of-day suffix if present.
    if (auto pos = text.find('T'); pos != std::string_view::npos) text = text.substr(0, pos);
    if (auto pos = text.find(' '); pos != std::string_view::npos) text = text.substr(0, pos);

    if (text.size() != 7 && text.size() != 10) return std::nullopt;
    if (text[4] != '-') return std::nullopt;

    Date d;
    if (!parse_int(text.substr(0, 4), d.year)) return std::nullopt;
    if (!parse_int(text.substr(5, 2), d.month)) return std::nullopt;
    if (!valid_month(d.month)) return std::nullopt;

    if (text.size() == 10) {
        if (text[7] != '-') return std::nullopt;
        if (!parse_int(text.substr(8, 2), d.day)) return std::nullopt;
        if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
    } else {
        d.day = 1;
    }
    return d;
}

}  // namespace gvarkit
