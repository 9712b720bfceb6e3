#include "orbcover/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "orbcover/geometry.hpp"

namespace orbcover {

using nlohmann::json;

namespace {

json must_get(const json& j, const char* key, const char* ctx) {
  if (!j.contains(key)) {
    throw ParseError(std::string(ctx) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

// Per-step integer requirement from either a scalar or a length-T array.
std::vector<int> parse_requirement(const json& j, int num_steps,
                                   const std::string& target_id) {
  std::vector<int> r;
  if (j.is_array()) {
    r = j.get<std::vector<int>>();
    if (static_cast<int>(r.size()) != num_steps) {
      throw ValidationError("target '" + target_id +
                            "': requirement array length != num_steps");
    }
  } else {
    r.assign(num_steps, j.get<int>());
  }
  for (int v : r) {
    if (v < 1) {
      throw ValidationError("target '" + target_id +
                            "': requirement must be >= 1 at every step");
    }
  }
  return r;
}

// D_p given either as covered-step count or as a fraction of T.
int parse_coverage_steps(const json& j, int num_steps) {
  if (j.is_number_float() && j.get<double>() <= 1.0) {
    const double frac = j.get<double>();
    if (frac < 0.0) throw ValidationError("coverage fraction must be >= 0");
    return static_cast<int>(std::ceil(frac * num_steps));
  }
  return j.get<int>();
}

}  // namespace

std::vector<Vec3> load_ephemeris_csv(const std::string& path, int num_steps) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ephemeris file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("ephemeris '" + path + "': empty file");
  }
  // Header `t,x_km,y_km,z_km`
  std::vector<Vec3> eph;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(ss, cell, ',')) {
        throw ParseError("ephemeris '" + path + "' line " +
                         std::to_string(lineno) + ": expected 4 columns");
      }
      try {
        vals[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw ParseError("ephemeris '" + path + "' line " +
                         std::to_string(lineno) + ": bad number '" + cell +
                         "'");
      }
    }
    eph.push_back({vals[1], vals[2], vals[3]});
  }
  if (static_cast<int>(eph.size()) != num_steps) {
    throw ValidationError("ephemeris '" + path + "': " +
                          std::to_string(eph.size()) + " rows, expected " +
                          std::to_string(num_steps));
  }
  return eph;
}

double rgt_semi_major_axis_km(int resonance) {
  if (resonance < 1) {
    throw ValidationError("rgt family: resonance must be >= 1");
  }
  const double period_s = kSiderealDayS / resonance;
  const double a = std::cbrt(kMuEarthKm3S2 * (period_s / (2.0 * kPi)) *
                             (period_s / (2.0 * kPi)));
  if (a <= kEarthRadiusKm) {
    throw ValidationError(
        "rgt family: no semi-major axis above the surface satisfies " +
        std::to_string(resonance) + ":1");
  }
  return a;
}

std::vector<OrbitalSlot> rgt_slot_family(int resonance, double inclination_deg,
                                         int raan_count, int aol_count,
                                         const std::string& id_prefix,
                                         double cost) {
  if (raan_count < 1 || aol_count < 1) {
    throw ValidationError("rgt family: raan_count and aol_count must be >= 1");
  }
  const double a = rgt_semi_major_axis_km(resonance);
  std::vector<OrbitalSlot> slots;
  slots.reserve(static_cast<size_t>(raan_count) * aol_count);
  for (int ir = 0; ir < raan_count; ++ir) {
    for (int iu = 0; iu < aol_count; ++iu) {
      OrbitalSlot s;
      s.id = id_prefix + "/r" + std::to_string(ir) + "u" + std::to_string(iu);
      s.elements = {a, inclination_deg, 360.0 * ir / raan_count,
                    360.0 * iu / aol_count};
      s.cost = cost;
      slots.push_back(std::move(s));
    }
  }
  return slots;
}

std::vector<OrbitalSlot> rgt_track_family(int resonance,
                                          double inclination_deg, int count,
                                          double seed_raan_deg,
                                          double seed_aol_deg,
                                          const std::string& id_prefix,
                                          double cost) {
  if (count < 1) throw ValidationError("rgt track family: count must be >= 1");
  const double a = rgt_semi_major_axis_km(resonance);
  const double n_deg_s = rad2deg(std::sqrt(kMuEarthKm3S2 / (a * a * a)));
  std::vector<OrbitalSlot> slots;
  slots.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double tau = kSiderealDayS * i / count;  // trail time along track
    OrbitalSlot s;
    s.id = id_prefix + "/t" + std::to_string(i);
    s.elements = {a, inclination_deg,
                  wrap_deg(seed_raan_deg - kGmstRateDegPerS * tau),
                  wrap_deg(seed_aol_deg + n_deg_s * tau)};
    s.cost = cost;
    slots.push_back(std::move(s));
  }
  return slots;
}

const char* formulation_kind_name(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::Sclp: return "SCLP";
    case FormulationKind::Psclp: return "PSCLP";
    case FormulationKind::Mclp: return "MCLP";
    case FormulationKind::Mmrt: return "MMRT";
    case FormulationKind::Mart: return "MART";
    case FormulationKind::MaxIsl: return "MaxISL";
    case FormulationKind::Zmrt: return "ZMRT";
    case FormulationKind::GammaArt: return "GammaART";
  }
  return "?";
}

FormulationKind formulation_kind_from_name(const std::string& name) {
  if (name == "SCLP") return FormulationKind::Sclp;
  if (name == "PSCLP") return FormulationKind::Psclp;
  if (name == "MCLP") return FormulationKind::Mclp;
  if (name == "MMRT") return FormulationKind::Mmrt;
  if (name == "MART") return FormulationKind::Mart;
  if (name == "MaxISL") return FormulationKind::MaxIsl;
  if (name == "ZMRT") return FormulationKind::Zmrt;
  if (name == "GammaART") return FormulationKind::GammaArt;
  throw ParseError("unknown formulation kind '" + name + "'");
}

void validate_scenario(const Scenario& sc) {
  const auto& g = sc.grid;
  if (g.dt_s <= 0.0) throw ValidationError("time_grid: dt must be > 0");
  if (g.num_steps < 1) throw ValidationError("time_grid: num_steps must be >= 1");
  if (sc.targets.empty()) throw ValidationError("scenario has no targets");
  if (sc.slots.empty()) throw ValidationError("scenario has no orbital slots");

  if (g.cyclic) {
    // Permitted only when an RGT family's repeat period matches the horizon.
    bool ok = false;
    for (const auto& slot : sc.slots) {
      const double a = slot.elements.semi_major_axis_km;
      const double period =
          2.0 * kPi * std::sqrt(a * a * a / kMuEarthKm3S2);
      const double k = std::round(kSiderealDayS / period);
      if (k >= 1.0 && std::abs(kSiderealDayS - k * period) < 1.0 &&
          std::abs(kSiderealDayS - g.horizon_s()) <= g.dt_s) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ValidationError(
          "time_grid: cyclic=true requires a repeat-ground-track family whose "
          "repetition period equals T*dt within one dt");
    }
  }

  std::set<std::string> tids;
  for (const auto& t : sc.targets) {
    if (!tids.insert(t.id).second) {
      throw ValidationError("duplicate target id '" + t.id + "'");
    }
    if (t.kind == TargetKind::Static) {
      if (t.lat_deg < -90.0 || t.lat_deg > 90.0) {
        throw ValidationError("target '" + t.id + "': latitude out of range");
      }
      if (t.lon_deg <= -180.0 || t.lon_deg > 180.0) {
        throw ValidationError("target '" + t.id +
                              "': longitude out of (-180, 180]");
      }
    } else {
      if (static_cast<int>(t.ephemeris_eci_km.size()) != g.num_steps) {
        throw ValidationError("target '" + t.id +
                              "': ephemeris length != num_steps");
      }
    }
    if (static_cast<int>(t.requirement.size()) != g.num_steps) {
      throw ValidationError("target '" + t.id +
                            "': requirement length != num_steps");
    }
    for (int v : t.requirement) {
      if (v < 1) {
        throw ValidationError("target '" + t.id + "': requirement must be >= 1");
      }
    }
  }

  std::set<std::string> sids;
  for (const auto& s : sc.slots) {
    if (!sids.insert(s.id).second) {
      throw ValidationError("duplicate slot id '" + s.id + "'");
    }
    if (s.elements.semi_major_axis_km <= kEarthRadiusKm) {
      throw ValidationError("slot '" + s.id +
                            "': semi-major axis must exceed Earth radius");
    }
    if (s.cost < 0.0) {
      throw ValidationError("slot '" + s.id + "': cost must be >= 0");
    }
  }

  const auto& f = sc.formulation;
  const int T = g.num_steps;
  const int P = static_cast<int>(sc.targets.size());
  if (f.beta <= 0.0 || f.beta >= 1.0) {
    throw ValidationError("formulation: beta must lie in (0, 1)");
  }
  if (!f.coverage_steps.empty()) {
    if (static_cast<int>(f.coverage_steps.size()) != P) {
      throw ValidationError("formulation: coverage_steps size != targets");
    }
    for (int d : f.coverage_steps) {
      if (d < 0 || d > T) {
        throw ValidationError("formulation: D_p must lie in [0, T]");
      }
    }
  }
  if (f.mean_coverage &&
      (*f.mean_coverage < 0 ||
       *f.mean_coverage > static_cast<long long>(T) * P)) {
    throw ValidationError("formulation: mean coverage D must lie in [0, T*P]");
  }
  const bool needs_n = f.kind == FormulationKind::Mmrt ||
                       f.kind == FormulationKind::Mart ||
                       (f.kind == FormulationKind::Mclp && !f.cost_budget);
  if (needs_n) {
    if (f.num_satellites < 1) {
      throw ValidationError("formulation: N must be >= 1");
    }
    if (f.num_satellites > static_cast<int>(sc.slots.size())) {
      throw ValidationError("formulation: N exceeds number of slots");
    }
  }
  if (f.cost_budget && *f.cost_budget < 0.0) {
    throw ValidationError("formulation: cost budget must be >= 0");
  }
  if (!f.rewards.empty()) {
    if (static_cast<int>(f.rewards.size()) != P) {
      throw ValidationError("formulation: rewards size != targets");
    }
    for (const auto& row : f.rewards) {
      if (static_cast<int>(row.size()) != T) {
        throw ValidationError("formulation: rewards row length != num_steps");
      }
      for (double v : row) {
        if (v < 0.0) throw ValidationError("formulation: rewards must be >= 0");
      }
    }
  }
  if (!f.mrt_bound_steps.empty()) {
    if (static_cast<int>(f.mrt_bound_steps.size()) != P) {
      throw ValidationError("formulation: z size != targets");
    }
    for (int z : f.mrt_bound_steps) {
      if (z < 0 || z > T) throw ValidationError("formulation: z_p not in [0, T]");
    }
  }
  if (!f.art_bound_steps.empty()) {
    if (static_cast<int>(f.art_bound_steps.size()) != P) {
      throw ValidationError("formulation: gamma size != targets");
    }
    for (double gma : f.art_bound_steps) {
      if (gma < 0.0 || gma > T) {
        throw ValidationError("formulation: gamma_p not in [0, T]");
      }
    }
  }
  if (f.isl_epsilon_km < 0.0) {
    throw ValidationError("formulation: isl epsilon must be >= 0");
  }

  if (sc.solver.time_limit_s <= 0.0) {
    throw ValidationError("solver: time limit must be positive");
  }
  if (sc.solver.abs_gap < 0.0) {
    throw ValidationError("solver: abs_gap must be >= 0");
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("scenario '" + path + "': " + e.what());
  }

  Scenario sc;
  sc.content_hash = fnv1a64(text);
  const auto dir = std::filesystem::path(path).parent_path();

  try {
    const json jg = must_get(j, "time_grid", "scenario");
    sc.grid.epoch_utc = must_get(jg, "epoch", "time_grid").get<std::string>();
    sc.grid.epoch_jd = parse_utc_iso8601(sc.grid.epoch_utc);
    sc.grid.dt_s = must_get(jg, "dt_s", "time_grid").get<double>();
    sc.grid.num_steps = must_get(jg, "num_steps", "time_grid").get<int>();
    sc.grid.cyclic = jg.value("cyclic", false);
    if (jg.contains("gmst0_deg")) {
      sc.grid.gmst0_deg = jg.at("gmst0_deg").get<double>();
    }

    for (const json& jt : must_get(j, "targets", "scenario")) {
      Target t;
      t.id = must_get(jt, "id", "target").get<std::string>();
      const std::string kind = jt.value("kind", "static");
      if (kind == "static") {
        t.kind = TargetKind::Static;
        t.lat_deg = must_get(jt, "lat_deg", "target").get<double>();
        t.lon_deg = must_get(jt, "lon_deg", "target").get<double>();
        t.alt_m = jt.value("alt_m", 0.0);
        t.min_elevation_deg = jt.value("min_elevation_deg", 0.0);
      } else if (kind == "dynamic") {
        t.kind = TargetKind::Dynamic;
        if (jt.contains("max_range_km")) {
          t.max_range_km = jt.at("max_range_km").get<double>();
        }
        if (jt.contains("ephemeris_csv")) {
          const auto p =
              dir / jt.at("ephemeris_csv").get<std::string>();
          t.ephemeris_eci_km =
              load_ephemeris_csv(p.string(), sc.grid.num_steps);
        } else if (jt.contains("ephemeris")) {
          for (const json& row : jt.at("ephemeris")) {
            t.ephemeris_eci_km.push_back({row.at(0).get<double>(),
                                          row.at(1).get<double>(),
                                          row.at(2).get<double>()});
          }
        } else {
          throw ParseError("target '" + t.id +
                           "': dynamic target needs ephemeris_csv or ephemeris");
        }
      } else {
        throw ParseError("target '" + t.id + "': unknown kind '" + kind + "'");
      }
      t.requirement = parse_requirement(jt.value("requirement", json(1)),
                                        sc.grid.num_steps, t.id);
      sc.targets.push_back(std::move(t));
    }

    if (j.contains("slot_families")) {
      for (const json& jf : j.at("slot_families")) {
        const std::string id = must_get(jf, "id", "slot_family");
        const std::string kind = jf.value("kind", "rgt");
        const double cost = jf.value("cost", 1.0);
        std::vector<OrbitalSlot> fam;
        if (kind == "rgt") {
          fam = rgt_slot_family(must_get(jf, "resonance", "slot_family"),
                                must_get(jf, "inclination_deg", "slot_family"),
                                must_get(jf, "raan_count", "slot_family"),
                                must_get(jf, "aol_count", "slot_family"), id,
                                cost);
        } else if (kind == "rgt_track") {
          fam = rgt_track_family(must_get(jf, "resonance", "slot_family"),
                                 must_get(jf, "inclination_deg", "slot_family"),
                                 must_get(jf, "count", "slot_family"),
                                 jf.value("seed_raan_deg", 0.0),
                                 jf.value("seed_aol_deg", 0.0), id, cost);
        } else if (kind == "grid") {
          const double a = must_get(jf, "semi_major_axis_km", "slot_family");
          std::vector<double> incs;
          if (jf.contains("inclinations_deg")) {
            incs = jf.at("inclinations_deg").get<std::vector<double>>();
          } else {
            incs = {must_get(jf, "inclination_deg", "slot_family")};
          }
          const int nr = must_get(jf, "raan_count", "slot_family");
          const int nu = must_get(jf, "aol_count", "slot_family");
          if (nr < 1 || nu < 1) {
            throw ValidationError("slot_family '" + id +
                                  "': counts must be >= 1");
          }
          int ii = 0;
          for (double inc : incs) {
            for (int ir = 0; ir < nr; ++ir) {
              for (int iu = 0; iu < nu; ++iu) {
                OrbitalSlot s;
                s.id = id + "/i" + std::to_string(ii) + "r" +
                       std::to_string(ir) + "u" + std::to_string(iu);
                s.elements = {a, inc, 360.0 * ir / nr, 360.0 * iu / nu};
                s.cost = cost;
                fam.push_back(std::move(s));
              }
            }
            ++ii;
          }
        } else {
          throw ParseError("slot_family '" + id + "': unknown kind '" + kind +
                           "'");
        }
        sc.slots.insert(sc.slots.end(), fam.begin(), fam.end());
      }
    }
    if (j.contains("slots_explicit")) {
      for (const json& js : j.at("slots_explicit")) {
        OrbitalSlot s;
        s.id = must_get(js, "id", "slot");
        s.elements.semi_major_axis_km =
            must_get(js, "semi_major_axis_km", "slot");
        s.elements.inclination_deg = must_get(js, "inclination_deg", "slot");
        s.elements.raan_deg = js.value("raan_deg", 0.0);
        s.elements.arg_latitude_deg = js.value("arg_latitude_deg", 0.0);
        s.cost = js.value("cost", 1.0);
        sc.slots.push_back(std::move(s));
      }
    }

    if (j.contains("deployment")) {
      const json jd = j.at("deployment");
      DeploymentSpec d;
      d.parking_altitude_km = jd.value("parking_altitude_km", 500.0);
      d.parking_inclination_deg = jd.value("parking_inclination_deg", 28.5);
      d.parking_raan_deg = jd.value("parking_raan_deg", 0.0);
      d.parking_arg_latitude_deg = jd.value("parking_arg_latitude_deg", 0.0);
      d.phasing_revolutions = jd.value("phasing_revolutions", 5);
      sc.deployment = d;
      if (jd.value("apply_cost", true)) {
        ParkingOrbit park{kEarthRadiusKm + d.parking_altitude_km,
                          d.parking_inclination_deg, d.parking_raan_deg,
                          d.parking_arg_latitude_deg};
        for (auto& s : sc.slots) {
          s.cost = deployment_delta_v(s, park, d.phasing_revolutions);
        }
      }
    }

    const json jf = must_get(j, "formulation", "scenario");
    FormulationSpec& f = sc.formulation;
    f.kind = formulation_kind_from_name(
        must_get(jf, "kind", "formulation").get<std::string>());
    const int T = sc.grid.num_steps;
    const int P = static_cast<int>(sc.targets.size());
    if (jf.contains("coverage")) {
      const json jc = jf.at("coverage");
      if (jc.is_array()) {
        for (const json& v : jc) f.coverage_steps.push_back(parse_coverage_steps(v, T));
      } else {
        f.coverage_steps.assign(P, parse_coverage_steps(jc, T));
      }
    }
    if (jf.contains("mean_coverage")) {
      const json jm = jf.at("mean_coverage");
      if (jm.is_number_float() && jm.get<double>() <= 1.0) {
        f.mean_coverage = static_cast<long long>(
            std::ceil(jm.get<double>() * static_cast<double>(T) * P));
      } else {
        f.mean_coverage = jm.get<long long>();
      }
    }
    f.num_satellites = jf.value("N", 0);
    if (jf.contains("cost_budget")) {
      f.cost_budget = jf.at("cost_budget").get<double>();
    }
    if (jf.contains("rewards")) {
      f.rewards = jf.at("rewards").get<std::vector<std::vector<double>>>();
    }
    if (jf.contains("z")) {
      const json jz = jf.at("z");
      if (jz.is_array()) {
        f.mrt_bound_steps = jz.get<std::vector<int>>();
      } else {
        f.mrt_bound_steps.assign(P, jz.get<int>());
      }
    }
    if (jf.contains("gamma")) {
      const json jg2 = jf.at("gamma");
      if (jg2.is_array()) {
        f.art_bound_steps = jg2.get<std::vector<double>>();
      } else {
        f.art_bound_steps.assign(P, jg2.get<double>());
      }
    }
    f.isl_epsilon_km = jf.value("isl_epsilon_km", 0.0);
    if (jf.contains("isl_max_range_km")) {
      f.isl_max_range_km = jf.at("isl_max_range_km").get<double>();
    }
    f.beta = jf.value("beta", 0.5);
    f.cyclic = jf.value("cyclic", sc.grid.cyclic);
    f.sum_of_mrts = jf.value("sum_of_mrts", false);
    f.tighten_big_m = jf.value("tighten_big_m", false);
    const std::string dm = jf.value("degree_mode", "corrected");
    if (dm == "corrected") {
      f.degree_mode = DegreeMode::Corrected;
    } else if (dm == "literal") {
      f.degree_mode = DegreeMode::Literal;
    } else {
      throw ParseError("formulation: unknown degree_mode '" + dm + "'");
    }

    if (j.contains("solver")) {
      const json js = j.at("solver");
      sc.solver.time_limit_s = js.value("time_limit_s", 600.0);
      sc.solver.abs_gap = js.value("abs_gap", 1e-6);
      sc.solver.node_limit = js.value("node_limit", 0LL);
      sc.solver.seed = js.value("seed", 1ULL);
      sc.solver.branching = js.value("branching", "most-fractional");
    }
  } catch (const json::exception& e) {
    throw ParseError("scenario '" + path + "': " + e.what());
  }

  validate_scenario(sc);
  return sc;
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  json jg;
  jg["epoch"] = sc.grid.epoch_utc;
  jg["dt_s"] = sc.grid.dt_s;
  jg["num_steps"] = sc.grid.num_steps;
  jg["cyclic"] = sc.grid.cyclic;
  if (sc.grid.gmst0_deg) jg["gmst0_deg"] = *sc.grid.gmst0_deg;
  j["time_grid"] = jg;

  j["targets"] = json::array();
  for (const auto& t : sc.targets) {
    json jt;
    jt["id"] = t.id;
    if (t.kind == TargetKind::Static) {
      jt["kind"] = "static";
      jt["lat_deg"] = t.lat_deg;
      jt["lon_deg"] = t.lon_deg;
      jt["alt_m"] = t.alt_m;
      jt["min_elevation_deg"] = t.min_elevation_deg;
    } else {
      jt["kind"] = "dynamic";
      if (t.max_range_km) jt["max_range_km"] = *t.max_range_km;
      json rows = json::array();
      for (const auto& v : t.ephemeris_eci_km) {
        rows.push_back(json::array({v.x, v.y, v.z}));
      }
      jt["ephemeris"] = rows;
    }
    jt["requirement"] = t.requirement;
    j["targets"].push_back(jt);
  }

  j["slots_explicit"] = json::array();
  for (const auto& s : sc.slots) {
    json js;
    js["id"] = s.id;
    js["semi_major_axis_km"] = s.elements.semi_major_axis_km;
    js["inclination_deg"] = s.elements.inclination_deg;
    js["raan_deg"] = s.elements.raan_deg;
    js["arg_latitude_deg"] = s.elements.arg_latitude_deg;
    js["cost"] = s.cost;
    j["slots_explicit"].push_back(js);
  }

  const auto& f = sc.formulation;
  json jf;
  jf["kind"] = formulation_kind_name(f.kind);
  if (!f.coverage_steps.empty()) jf["coverage"] = f.coverage_steps;
  if (f.mean_coverage) jf["mean_coverage"] = *f.mean_coverage;
  if (f.num_satellites > 0) jf["N"] = f.num_satellites;
  if (f.cost_budget) jf["cost_budget"] = *f.cost_budget;
  if (!f.rewards.empty()) jf["rewards"] = f.rewards;
  if (!f.mrt_bound_steps.empty()) jf["z"] = f.mrt_bound_steps;
  if (!f.art_bound_steps.empty()) jf["gamma"] = f.art_bound_steps;
  if (f.isl_epsilon_km != 0.0) jf["isl_epsilon_km"] = f.isl_epsilon_km;
  if (f.isl_max_range_km) jf["isl_max_range_km"] = *f.isl_max_range_km;
  jf["beta"] = f.beta;
  jf["cyclic"] = f.cyclic;
  jf["sum_of_mrts"] = f.sum_of_mrts;
  jf["tighten_big_m"] = f.tighten_big_m;
  jf["degree_mode"] =
      f.degree_mode == DegreeMode::Corrected ? "corrected" : "literal";
  j["formulation"] = jf;

  json js;
  js["time_limit_s"] = sc.solver.time_limit_s;
  js["abs_gap"] = sc.solver.abs_gap;
  js["node_limit"] = sc.solver.node_limit;
  js["seed"] = sc.solver.seed;
  js["branching"] = sc.solver.branching;
  j["solver"] = js;

  // Deployment costs are already baked into slot costs on save.
  return j.dump(2);
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scenario file '" + path + "'");
  out << scenario_to_json(sc) << "\n";
}

}  // namespace orbcover
