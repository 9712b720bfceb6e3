#pragma once

#include <optional>
#include <vector>

#include "orbcover/core.hpp"
#include "orbcover/scenario.hpp"

namespace orbcover {

struct EciState {
  Vec3 position_km;
  Vec3 velocity_km_s;
  int step = 0;
};

struct IslGeometry {
  double epsilon_km = 0.0;               // shield-radius bias above R_earth
  std::optional<double> max_range_km;
};

struct IslVisibility {
  double g_km = 0.0;    // line-of-sight clearance function
  double rho_km = 0.0;  // inter-satellite range
  bool visible = false;
};

// Keplerian circular two-body motion sampled on the grid. Radius stays at
// the slot's semi-major axis; speed is sqrt(mu/a).
std::vector<EciState> propagate_circular(const OrbitalSlot& slot,
                                         const TimeGrid& grid);

// ECI position/velocity of a circular orbit at a given offset from epoch.
EciState circular_state_at(const OrbitalElements& el, double t_offset_s,
                           int step = 0);

// Greenwich sidereal angle at step t, degrees. Uses the grid's gmst0
// override when present, otherwise the linear GMST model at the epoch.
double gmst_deg(const TimeGrid& grid, int t);
double gmst_deg_at_jd(double jd_ut);

// Rotation about the spin axis by theta (ECI -> ECEF); +X maps toward -Y
// for a positive angle.
Vec3 rotate_z(const Vec3& v, double theta_deg);
Vec3 eci_to_ecef(const Vec3& eci_km, const TimeGrid& grid, int t);

// Spherical-Earth site position (geodetic == geocentric under this model).
Vec3 site_ecef(double lat_deg, double lon_deg, double alt_m);

// Elevation of the satellite above the site's local horizon, degrees in
// [-90, 90]. The local vertical is the site's outward radial.
double elevation_deg(const Vec3& sat_ecef_km, const Vec3& site_ecef_km);

// Inter-satellite visibility: g = sqrt(|rj|^2-(R+eps)^2)
//                               + sqrt(|rk|^2-(R+eps)^2) - |rk-rj|.
// Visible when g > 0 and the range check (if any) passes. Throws
// ValidationError if either satellite sits below the shield radius.
IslVisibility isl_visibility(const Vec3& r_j_km, const Vec3& r_k_km,
                             const IslGeometry& geo);

// True when the straight segment between the two points clears the sphere
// of radius `radius_km` (used for dynamic-target line of sight).
bool line_of_sight_clear(const Vec3& a_km, const Vec3& b_km, double radius_km);

struct ParkingOrbit {
  double semi_major_axis_km = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double arg_latitude_deg = 0.0;
};

// Coplanar Hohmann transfer between circular orbits, km/s.
double hohmann_delta_v(double a_from_km, double a_to_km);

// Circular-orbit plane change through the spherical angle between the two
// orbit normals, km/s.
double plane_change_delta_v(double a_km, double inc_from_deg,
                            double raan_from_deg, double inc_to_deg,
                            double raan_to_deg);

// Two-impulse phasing by `phase_deg` completed within `revolutions` laps of
// the phasing orbit; picks the cheaper feasible direction.
double phasing_delta_v(double a_km, double phase_deg, int revolutions);

// Deployment cost: Hohmann to the slot altitude, combined plane change at
// the slot, then phasing to the slot's argument of latitude.
double deployment_delta_v(const OrbitalSlot& slot, const ParkingOrbit& parking,
                          int phasing_revolutions);

}  // namespace orbcover
