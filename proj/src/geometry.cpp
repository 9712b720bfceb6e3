#include "orbcover/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace orbcover {

EciState circular_state_at(const OrbitalElements& el, double t_offset_s,
                           int step) {
  const double a = el.semi_major_axis_km;
  const double n = std::sqrt(kMuEarthKm3S2 / (a * a * a));  // rad/s
  const double v = std::sqrt(kMuEarthKm3S2 / a);
  const double u = deg2rad(el.arg_latitude_deg) + n * t_offset_s;
  const double inc = deg2rad(el.inclination_deg);
  const double raan = deg2rad(el.raan_deg);

  const double cu = std::cos(u), su = std::sin(u);
  const double ci = std::cos(inc), si = std::sin(inc);
  const double co = std::cos(raan), so = std::sin(raan);

  EciState s;
  s.position_km = {a * (cu * co - su * ci * so), a * (cu * so + su * ci * co),
                   a * (su * si)};
  s.velocity_km_s = {v * (-su * co - cu * ci * so),
                     v * (-su * so + cu * ci * co), v * (cu * si)};
  s.step = step;
  return s;
}

std::vector<EciState> propagate_circular(const OrbitalSlot& slot,
                                         const TimeGrid& grid) {
  if (slot.elements.semi_major_axis_km <= kEarthRadiusKm) {
    throw ValidationError("slot '" + slot.id +
                          "': semi-major axis below Earth radius");
  }
  std::vector<EciState> out;
  out.reserve(grid.num_steps);
  for (int t = 0; t < grid.num_steps; ++t) {
    out.push_back(circular_state_at(slot.elements, grid.offset_s(t), t));
  }
  return out;
}

double gmst_deg_at_jd(double jd_ut) {
  return wrap_deg(280.46061837 + kGmstRateDegPerDay * (jd_ut - 2451545.0));
}

double gmst_deg(const TimeGrid& grid, int t) {
  const double g0 =
      grid.gmst0_deg ? *grid.gmst0_deg : gmst_deg_at_jd(grid.epoch_jd);
  return wrap_deg(g0 + kGmstRateDegPerS * grid.offset_s(t));
}

Vec3 rotate_z(const Vec3& v, double theta_deg) {
  const double th = deg2rad(theta_deg);
  const double c = std::cos(th), s = std::sin(th);
  return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

Vec3 eci_to_ecef(const Vec3& eci_km, const TimeGrid& grid, int t) {
  return rotate_z(eci_km, gmst_deg(grid, t));
}

Vec3 site_ecef(double lat_deg, double lon_deg, double alt_m) {
  const double r = kEarthRadiusKm + alt_m / 1000.0;
  const double lat = deg2rad(lat_deg), lon = deg2rad(lon_deg);
  return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon),
          r * std::sin(lat)};
}

double elevation_deg(const Vec3& sat_ecef_km, const Vec3& site_ecef_km) {
  const Vec3 los = sat_ecef_km - site_ecef_km;
  const double range = los.norm();
  if (range == 0.0) {
    throw ValidationError("elevation undefined: satellite coincides with site");
  }
  const Vec3 up = site_ecef_km.normalized();
  double s = los.dot(up) / range;
  s = std::clamp(s, -1.0, 1.0);
  return rad2deg(std::asin(s));
}

IslVisibility isl_visibility(const Vec3& r_j_km, const Vec3& r_k_km,
                             const IslGeometry& geo) {
  const double shield = kEarthRadiusKm + geo.epsilon_km;
  const double rj = r_j_km.norm();
  const double rk = r_k_km.norm();
  if (rj <= shield || rk <= shield) {
    throw ValidationError("isl_visibility: satellite below shield radius");
  }
  IslVisibility out;
  out.rho_km = (r_k_km - r_j_km).norm();
  out.g_km = std::sqrt(rj * rj - shield * shield) +
             std::sqrt(rk * rk - shield * shield) - out.rho_km;
  out.visible = out.g_km > 0.0 &&
                (!geo.max_range_km || out.rho_km <= *geo.max_range_km);
  return out;
}

bool line_of_sight_clear(const Vec3& a_km, const Vec3& b_km, double radius_km) {
  // Closest approach of the segment a->b to the origin.
  const Vec3 d = b_km - a_km;
  const double dd = d.dot(d);
  double t = 0.0;
  if (dd > 0.0) t = std::clamp(-a_km.dot(d) / dd, 0.0, 1.0);
  const Vec3 closest = a_km + d * t;
  return closest.norm() > radius_km;
}

double hohmann_delta_v(double a_from_km, double a_to_km) {
  if (a_from_km == a_to_km) return 0.0;
  const double a1 = a_from_km, a2 = a_to_km;
  const double v1 = std::sqrt(kMuEarthKm3S2 / a1);
  const double v2 = std::sqrt(kMuEarthKm3S2 / a2);
  const double dv1 = std::abs(v1 * (std::sqrt(2.0 * a2 / (a1 + a2)) - 1.0));
  const double dv2 = std::abs(v2 * (1.0 - std::sqrt(2.0 * a1 / (a1 + a2))));
  return dv1 + dv2;
}

namespace {

Vec3 orbit_normal(double inc_deg, double raan_deg) {
  const double i = deg2rad(inc_deg), o = deg2rad(raan_deg);
  return {std::sin(o) * std::sin(i), -std::cos(o) * std::sin(i), std::cos(i)};
}

}  // namespace

double plane_change_delta_v(double a_km, double inc_from_deg,
                            double raan_from_deg, double inc_to_deg,
                            double raan_to_deg) {
  const Vec3 n1 = orbit_normal(inc_from_deg, raan_from_deg);
  const Vec3 n2 = orbit_normal(inc_to_deg, raan_to_deg);
  const double c = std::clamp(n1.dot(n2), -1.0, 1.0);
  const double theta = std::acos(c);
  const double v = std::sqrt(kMuEarthKm3S2 / a_km);
  return 2.0 * v * std::sin(theta / 2.0);
}

double phasing_delta_v(double a_km, double phase_deg, int revolutions) {
  double phase = wrap_deg(phase_deg);
  if (phase == 0.0) return 0.0;
  if (revolutions < 1) {
    throw ValidationError("phasing_delta_v: revolutions must be >= 1");
  }
  const double t_c = 2.0 * kPi * std::sqrt(a_km * a_km * a_km / kMuEarthKm3S2);
  const double v_c = std::sqrt(kMuEarthKm3S2 / a_km);
  double best = -1.0;
  // Catch up (shorter phasing orbit) or fall back (longer one).
  for (const double frac : {-phase / 360.0, (360.0 - phase) / 360.0}) {
    const double t_ph = t_c * (1.0 + frac / revolutions);
    if (t_ph <= 0.0) continue;
    const double a_ph = std::cbrt(kMuEarthKm3S2 *
                                  (t_ph / (2.0 * kPi)) * (t_ph / (2.0 * kPi)));
    const double periapsis = 2.0 * a_ph - a_km;
    if (periapsis <= kEarthRadiusKm) continue;
    const double v_ph =
        std::sqrt(kMuEarthKm3S2 * (2.0 / a_km - 1.0 / a_ph));
    const double dv = 2.0 * std::abs(v_ph - v_c);
    if (best < 0.0 || dv < best) best = dv;
  }
  if (best < 0.0) {
    throw ValidationError("phasing_delta_v: no feasible phasing orbit");
  }
  return best;
}

double deployment_delta_v(const OrbitalSlot& slot, const ParkingOrbit& parking,
                          int phasing_revolutions) {
  const auto& el = slot.elements;
  double dv = hohmann_delta_v(parking.semi_major_axis_km,
                              el.semi_major_axis_km);
  dv += plane_change_delta_v(el.semi_major_axis_km, parking.inclination_deg,
                             parking.raan_deg, el.inclination_deg,
                             el.raan_deg);
  const double phase =
      wrap_deg(el.arg_latitude_deg - parking.arg_latitude_deg);
  dv += phasing_delta_v(el.semi_major_axis_km, phase, phasing_revolutions);
  return dv;
}

}  // namespace orbcover
