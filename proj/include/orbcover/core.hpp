#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbcover {

// Physical constants (km, s, deg). Spherical Earth throughout.
inline constexpr double kMuEarthKm3S2 = 398600.4418;
inline constexpr double kEarthRadiusKm = 6378.14;
inline constexpr double kSiderealDayS = 86164.0905;
// Linear GMST model rate; equals 2*pi/sidereal-day when expressed in rad/s.
inline constexpr double kGmstRateDegPerDay = 360.98564736629;
inline constexpr double kGmstRateDegPerS = kGmstRateDegPerDay / 86400.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Wraps an angle in degrees into [0, 360).
inline double wrap_deg(double d) {
  double w = std::fmod(d, 360.0);
  return w < 0.0 ? w + 360.0 : w;
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Julian date of a UTC calendar instant (no leap-second handling).
double julian_date_utc(int year, int month, int day, int hour, int minute,
                       double second);

// Parses "YYYY-MM-DDTHH:MM:SS[.fff]Z" (trailing Z optional) to a julian date.
double parse_utc_iso8601(std::string_view text);

// FNV-1a 64-bit; used for scenario/content hashes in manifests.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace orbcover
