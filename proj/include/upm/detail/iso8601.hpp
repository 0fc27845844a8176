#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace upm::detail {

// Timestamps are milliseconds since the Unix epoch, UTC.

inline std::string format_utc_ms(std::int64_t ms) {
  std::int64_t days = ms / 86'400'000;
  std::int64_t rem = ms % 86'400'000;
  if (rem < 0) {
    rem += 86'400'000;
    --days;
  }
  const std::chrono::sys_days sd{std::chrono::days{days}};
  const std::chrono::year_month_day ymd{sd};
  const int msec = static_cast<int>(rem % 1000);
  rem /= 1000;
  const int sec = static_cast<int>(rem % 60);
  rem /= 60;
  const int min = static_cast<int>(rem % 60);
  const int hour = static_cast<int>(rem / 60);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), hour, min, sec, msec);
  return buf;
}

inline bool parse_fixed_uint(std::string_view s, std::size_t& pos, int digits,
                             std::int64_t& out) {
  if (pos + static_cast<std::size_t>(digits) > s.size()) return false;
  std::int64_t v = 0;
  for (int i = 0; i < digits; ++i) {
    const char c = s[pos + static_cast<std::size_t>(i)];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += static_cast<std::size_t>(digits);
  out = v;
  return true;
}

// Accepts YYYY-MM-DD['T'|' ']HH:MM:SS with optional fractional seconds and an
// optional zone: 'Z', +HH:MM, +HHMM, or +HH. A missing zone means UTC.
// Fractional digits beyond milliseconds are ignored.
inline std::optional<std::int64_t> parse_iso8601(std::string_view s) {
  std::size_t pos = 0;
  std::int64_t year = 0, month = 0, day = 0, hour = 0, min = 0, sec = 0;
  bool neg_year = false;
  if (pos < s.size() && s[pos] == '-') {
    neg_year = true;
    ++pos;
  }
  if (!parse_fixed_uint(s, pos, 4, year)) return std::nullopt;
  if (neg_year) year = -year;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!parse_fixed_uint(s, pos, 2, month)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!parse_fixed_uint(s, pos, 2, day)) return std::nullopt;
  if (pos >= s.size() || (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ')) {
    return std::nullopt;
  }
  ++pos;
  if (!parse_fixed_uint(s, pos, 2, hour)) return std::nullopt;
  if (pos >= s.size() || s[pos] != ':') return std::nullopt;
  ++pos;
  if (!parse_fixed_uint(s, pos, 2, min)) return std::nullopt;
  if (pos >= s.size() || s[pos] != ':') return std::nullopt;
  ++pos;
  if (!parse_fixed_uint(s, pos, 2, sec)) return std::nullopt;

  std::int64_t frac_ms = 0;
  if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
    ++pos;
    std::int64_t scale = 100;
    bool any = false;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (scale > 0) frac_ms += (s[pos] - '0') * scale;
      scale /= 10;
      any = true;
      ++pos;
    }
    if (!any) return std::nullopt;
  }

  std::int64_t offset_min = 0;
  if (pos < s.size()) {
    const char z = s[pos];
    if (z == 'Z' || z == 'z') {
      ++pos;
    } else if (z == '+' || z == '-') {
      ++pos;
      std::int64_t oh = 0, om = 0;
      if (!parse_fixed_uint(s, pos, 2, oh)) return std::nullopt;
      if (pos < s.size() && s[pos] == ':') {
        ++pos;
        if (!parse_fixed_uint(s, pos, 2, om)) return std::nullopt;
      } else if (pos + 2 <= s.size() && s[pos] >= '0' && s[pos] <= '9') {
        if (!parse_fixed_uint(s, pos, 2, om)) return std::nullopt;
      }
      offset_min = oh * 60 + om;
      if (z == '-') offset_min = -offset_min;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  if (hour > 23 || min > 59 || sec > 60) return std::nullopt;
  if (sec == 60) sec = 59;  // leap seconds clamp

  const std::chrono::year_month_day ymd{
      std::chrono::year{static_cast<int>(year)},
      std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  const std::chrono::sys_days sd{ymd};
  const std::int64_t day_count = sd.time_since_epoch().count();
  std::int64_t ms = day_count * 86'400'000;
  ms += (hour * 3600 + min * 60 + sec) * 1000 + frac_ms;
  ms -= offset_min * 60'000;
  return ms;
}

}  // namespace upm::detail
