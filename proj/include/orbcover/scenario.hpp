#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbcover/core.hpp"

namespace orbcover {

// Uniform discrete time grid. Step t in [0, num_steps) maps to
// epoch + t*dt; external files and variable names use 1-based steps.
struct TimeGrid {
  std::string epoch_utc;  // ISO-8601 as given in the scenario file
  double epoch_jd = 0.0;
  double dt_s = 0.0;
  int num_steps = 0;
  bool cyclic = false;
  // Optional override of the Greenwich sidereal angle at epoch, degrees.
  std::optional<double> gmst0_deg;

  double offset_s(int t) const { return dt_s * t; }
  double horizon_s() const { return dt_s * num_steps; }
};

enum class TargetKind { Static, Dynamic };

struct Target {
  std::string id;
  TargetKind kind = TargetKind::Static;
  // Static
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double alt_m = 0.0;
  double min_elevation_deg = 0.0;
  // Dynamic: ECI position per time step, km.
  std::vector<Vec3> ephemeris_eci_km;
  std::optional<double> max_range_km;
  // Fold requirement r per step, length num_steps after load.
  std::vector<int> requirement;
};

struct OrbitalElements {
  double semi_major_axis_km = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double arg_latitude_deg = 0.0;
};

struct OrbitalSlot {
  std::string id;
  OrbitalElements elements;
  double cost = 1.0;
};

enum class FormulationKind {
  Sclp,
  Psclp,
  Mclp,
  Mmrt,
  Mart,
  MaxIsl,
  Zmrt,
  GammaArt,
};

enum class DegreeMode { Corrected, Literal };

struct FormulationSpec {
  FormulationKind kind = FormulationKind::Sclp;
  // PSCLP: per-target minimum covered steps, or a pooled total over all
  // (t, p) when mean_coverage is set.
  std::vector<int> coverage_steps;          // D_p, one per target
  std::optional<long long> mean_coverage;   // D
  int num_satellites = 0;                   // N (MCLP/MMRT/MART)
  std::optional<double> cost_budget;        // C (MCLP remark variant)
  std::vector<std::vector<double>> rewards; // pi[p][t], MCLP; empty => 1.0
  std::vector<int> mrt_bound_steps;         // z_p (z-MRT)
  std::vector<double> art_bound_steps;      // gamma_p (gamma-ART)
  double isl_epsilon_km = 0.0;              // max-ISL bias
  std::optional<double> isl_max_range_km;
  double beta = 0.5;
  bool cyclic = false;
  bool sum_of_mrts = false;                 // MMRT remark variant
  bool tighten_big_m = false;               // experimental M = T - r
  DegreeMode degree_mode = DegreeMode::Corrected;
};

struct SolverConfig {
  double time_limit_s = 600.0;
  double abs_gap = 1e-6;
  long long node_limit = 0;  // 0 = unlimited
  std::uint64_t seed = 1;
  std::string branching = "most-fractional";
};

// Deployment delta-v cost model inputs (cost_model = "delta_v").
struct DeploymentSpec {
  double parking_altitude_km = 500.0;
  double parking_inclination_deg = 28.5;
  double parking_raan_deg = 0.0;
  double parking_arg_latitude_deg = 0.0;
  int phasing_revolutions = 5;
};

struct Scenario {
  TimeGrid grid;
  std::vector<Target> targets;
  std::vector<OrbitalSlot> slots;
  FormulationSpec formulation;
  SolverConfig solver;
  std::optional<DeploymentSpec> deployment;
  std::uint64_t content_hash = 0;  // FNV-1a of the scenario file bytes
};

// Loads and fully validates a scenario file (UTF-8 JSON; dynamic-target
// ephemerides come from CSV files resolved relative to the scenario path).
Scenario load_scenario(const std::string& path);

// Serializes back to the schema accepted by load_scenario.
std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

// Validates every invariant; throws ValidationError naming the violation.
void validate_scenario(const Scenario& scenario);

// Circular repeat-ground-track family: `resonance` revolutions per Greenwich
// nodal period (two-body, so the Greenwich period is the sidereal day).
// RAAN and argument of latitude are gridded independently and uniformly
// over [0, 360).
std::vector<OrbitalSlot> rgt_slot_family(int resonance, double inclination_deg,
                                         int raan_count, int aol_count,
                                         const std::string& id_prefix = "rgt",
                                         double cost = 1.0);

// Slots evenly spaced in time along one closed repeat ground track:
// slot i trails the seed by i*T_repeat/count, which couples RAAN and
// argument of latitude so every slot's visibility profile is a circular
// time shift of the seed's.
std::vector<OrbitalSlot> rgt_track_family(int resonance, double inclination_deg,
                                          int count,
                                          double seed_raan_deg = 0.0,
                                          double seed_aol_deg = 0.0,
                                          const std::string& id_prefix = "rgt",
                                          double cost = 1.0);

// Semi-major axis of the k:1 repeat ground track under two-body dynamics.
double rgt_semi_major_axis_km(int resonance);

const char* formulation_kind_name(FormulationKind kind);
FormulationKind formulation_kind_from_name(const std::string& name);

// Reads a dynamic-target ephemeris CSV: header `t,x_km,y_km,z_km`, one row
// per step, ECI frame.
std::vector<Vec3> load_ephemeris_csv(const std::string& path, int num_steps);

}  // namespace orbcover
