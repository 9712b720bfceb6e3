#include "orbcover/core.hpp"

#include <cstdio>

namespace orbcover {

double julian_date_utc(int year, int month, int day, int hour, int minute,
                       double second) {
  // Fliegel–Van Flandern day number, valid for the Gregorian calendar.
  const int a = (14 - month) / 12;
  const int y = year + 4800 - a;
  const int m = month + 12 * a - 3;
  const long jdn = day + (153L * m + 2) / 5 + 365L * y + y / 4 - y / 100 +
                   y / 400 - 32045;
  return static_cast<double>(jdn) + (hour - 12) / 24.0 + minute / 1440.0 +
         second / 86400.0;
}

double parse_utc_iso8601(std::string_view text) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  double second = 0.0;
  const std::string buf(text);
  const int got = std::sscanf(buf.c_str(), "%d-%d-%dT%d:%d:%lf", &year, &month,
                              &day, &hour, &minute, &second);
  if (got != 6 || month < 1 || month > 12 || day < 1 || day > 31 || hour < 0 ||
      hour > 23 || minute < 0 || minute > 59 || second < 0.0 ||
      second >= 61.0) {
    throw ParseError("invalid UTC instant '" + buf +
                     "' (expected YYYY-MM-DDTHH:MM:SS[.fff]Z)");
  }
  return julian_date_utc(year, month, day, hour, minute, second);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace orbcover
