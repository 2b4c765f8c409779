#include "optent/json_io.hpp"

#include "optent/errors.hpp"

namespace optent {

using nlohmann::json;

json to_json(const SystemParams& p) {
  return json{{"mass_kg", p.mass},
              {"mech_freq_hz", p.mech_freq / kTwoPi},
              {"mech_damping_hz", p.mech_damping / kTwoPi},
              {"cavity_decay_hz", p.cavity_decay / kTwoPi},
              {"arm_length_m", p.arm_length},
              {"circ_power_w", p.circ_power},
              {"wavelength_m", p.wavelength},
              {"coupling", p.coupling},
              {"detuning", p.detuning}};
}

SystemParams system_params_from_json(const json& j) {
  SystemParams p = SystemParams::aligo();
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "aligo") {
      p = SystemParams::aligo();
    } else if (preset == "free_mass") {
      p = SystemParams::free_mass(kTwoPi * j.value("omega_q_hz", 100.0),
                                  kTwoPi * j.value("mech_freq_hz", 1.0),
                                  kTwoPi * j.value("mech_damping_hz", 0.0),
                                  j.value("mass_kg", 1.0));
      p.validate();
      return p;
    } else {
      throw ConfigError("unknown system preset '" + preset + "'");
    }
  }
  if (j.contains("mass_kg")) p.mass = j["mass_kg"].get<double>();
  if (j.contains("mech_freq_hz")) p.mech_freq = kTwoPi * j["mech_freq_hz"].get<double>();
  if (j.contains("mech_damping_hz")) p.mech_damping = kTwoPi * j["mech_damping_hz"].get<double>();
  if (j.contains("cavity_decay_hz")) p.cavity_decay = kTwoPi * j["cavity_decay_hz"].get<double>();
  if (j.contains("arm_length_m")) p.arm_length = j["arm_length_m"].get<double>();
  if (j.contains("wavelength_m")) p.wavelength = j["wavelength_m"].get<double>();
  if (j.contains("circ_power_w")) {
    p.circ_power = j["circ_power_w"].get<double>();
    p.coupling = coupling_from_power(p.circ_power, p.arm_length, p.wavelength);
  }
  if (j.contains("coupling")) p.coupling = j["coupling"].get<double>();
  if (j.contains("omega_q_hz")) {
    // Interaction frequency given directly; back-derive the coupling.
    const double wq = kTwoPi * j["omega_q_hz"].get<double>();
    p.coupling = 0.5 * wq * std::sqrt(p.mass * p.cavity_decay / kHbar);
  }
  p.validate();
  return p;
}

json to_json(const NoiseModel& m) {
  json j{{"family", m.family_name()}};
  switch (m.family()) {
    case NoiseModel::Family::None:
      break;
    case NoiseModel::Family::White:
    case NoiseModel::Family::Structural:
      j["omega_f_hz"] = m.omega_f() / kTwoPi;
      j["omega_x_hz"] = m.omega_x() / kTwoPi;
      j["mass_kg"] = m.mass();
      if (m.is_structural()) {
        j["phi"] = m.phi();
        j["omega_c_hz"] = m.omega_c() / kTwoPi;
      }
      break;
    case NoiseModel::Family::LigoParam:
    case NoiseModel::Family::SuspensionOnly: {
      const auto& p = m.ligo_params();
      j["tau_x1"] = p.tau_x1;
      j["tau_x2"] = p.tau_x2;
      j["omega_x_hz"] = p.omega_x / kTwoPi;
      j["alpha_x1"] = p.alpha_x1;
      j["alpha_x2"] = p.alpha_x2;
      if (m.family() == NoiseModel::Family::SuspensionOnly) {
        j["tau_st"] = m.tau_st();
        j["omega_st_hz"] = m.omega_st() / kTwoPi;
      } else {
        j["tau_f"] = p.tau_f;
        j["omega_f_hz"] = p.omega_f / kTwoPi;
        j["alpha_f1"] = p.alpha_f1;
        j["alpha_f2"] = p.alpha_f2;
        j["resonances"] = !p.resonances.empty();
      }
      break;
    }
    case NoiseModel::Family::Tabulated:
      j["note"] = "tabulated curves not echoed";
      break;
  }
  return j;
}

NoiseModel noise_model_from_json(const json& j) {
  const std::string family = j.value("family", "ligo");
  if (family == "none") return NoiseModel::none();
  if (family == "white" || family == "structural") {
    const double mass = j.value("mass_kg", 1.0);
    const double wf = kTwoPi * j.value("omega_f_hz", 100.0);
    double wx;
    if (j.contains("omega_x_hz"))
      wx = kTwoPi * j["omega_x_hz"].get<double>();
    else
      wx = wf * j.value("omega_x_over_omega_f", 1.0);
    if (family == "white") return NoiseModel::white(mass, wf, wx);
    return NoiseModel::structural(mass, wf, wx, j.value("phi", 0.05),
                                  kTwoPi * j.value("omega_c_hz", 0.05));
  }
  if (family == "ligo") {
    NoiseModel::LigoParams p;
    p.alpha_f1 = j.value("alpha_f1", 1.0);
    p.alpha_f2 = j.value("alpha_f2", 1.0);
    p.alpha_x1 = j.value("alpha_x1", 1.0);
    p.alpha_x2 = j.value("alpha_x2", 1.0);
    if (j.contains("tau_f")) p.tau_f = j["tau_f"].get<double>();
    if (j.contains("omega_f_hz")) p.omega_f = kTwoPi * j["omega_f_hz"].get<double>();
    if (j.contains("tau_x1")) p.tau_x1 = j["tau_x1"].get<double>();
    if (j.contains("tau_x2")) p.tau_x2 = j["tau_x2"].get<double>();
    if (j.contains("omega_x_hz")) p.omega_x = kTwoPi * j["omega_x_hz"].get<double>();
    if (j.value("resonances", false)) p.resonances = aligo_resonant_modes();
    return NoiseModel::ligo(p);
  }
  if (family == "suspension_only") {
    NoiseModel m = NoiseModel::suspension_only(j.value("tau_st", 3.1e-35),
                                               kTwoPi * j.value("omega_st_hz", 1.9e3));
    if (j.contains("alpha_x1")) m.set_knob("alpha_x1", j["alpha_x1"].get<double>());
    if (j.contains("alpha_x2")) m.set_knob("alpha_x2", j["alpha_x2"].get<double>());
    return m;
  }
  throw ConfigError("unknown noise family '" + family + "'");
}

}  // namespace optent
