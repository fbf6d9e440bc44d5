#include "zeno/config.hpp"

#include <fstream>
#include <set>

namespace zeno {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "delta_mev",       "omega_uev",          "kappa_mev",        "gamma_b_inv_ps",
      "cavity_peak_inv_ps", "xi_mev",          "cavity_center_mev", "dephasing_mode",
      "gamma_uev",       "alpha_ph_ps2",       "temperature_k",    "alpha_col",
      "beta_col",        "t_end_ps",           "n_time",           "spectrometer_nu_uev",
      "integration_T_ps",
  };
  return keys;
}

double read_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key + ": expected a number");
  return j.get<double>();
}

// Either a real number or [re, im].
Complex read_complex(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(key + ": expected a number or [re, im]");
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a flat object");
  for (const auto& [key, _] : j.items())
    if (!known_keys().count(key)) throw ConfigError("config: unknown key '" + key + "'");

  RunConfig c;
  auto num = [&j](const char* key, double& field) {
    if (j.contains(key)) field = read_number(j.at(key), key);
  };
  num("delta_mev", c.delta_mev);
  num("omega_uev", c.omega_uev);
  num("kappa_mev", c.kappa_mev);
  num("gamma_b_inv_ps", c.gamma_b_inv_ps);
  num("cavity_peak_inv_ps", c.cavity_peak_inv_ps);
  num("xi_mev", c.xi_mev);
  num("gamma_uev", c.gamma_uev);
  num("alpha_ph_ps2", c.alpha_ph_ps2);
  num("temperature_k", c.temperature_k);
  num("t_end_ps", c.t_end_ps);
  num("integration_T_ps", c.integration_T_ps);
  if (j.contains("cavity_center_mev"))
    c.cavity_center_mev = read_number(j.at("cavity_center_mev"), "cavity_center_mev");
  if (j.contains("spectrometer_nu_uev"))
    c.spectrometer_nu_uev = read_number(j.at("spectrometer_nu_uev"), "spectrometer_nu_uev");
  if (j.contains("n_time")) {
    const auto& v = j.at("n_time");
    if (!v.is_number_unsigned() || v.get<std::size_t>() < 2)
      throw ConfigError("n_time: expected an integer >= 2");
    c.n_time = v.get<std::size_t>();
  }
  if (j.contains("dephasing_mode")) {
    if (!j.at("dephasing_mode").is_string()) throw ConfigError("dephasing_mode: expected a string");
    c.dephasing_mode = j.at("dephasing_mode").get<std::string>();
    if (c.dephasing_mode != "none" && c.dephasing_mode != "fixed" && c.dephasing_mode != "phonon")
      throw ConfigError("dephasing_mode: must be one of none, fixed, phonon");
  }
  if (j.contains("alpha_col")) c.alpha_col = read_complex(j.at("alpha_col"), "alpha_col");
  if (j.contains("beta_col")) c.beta_col = read_complex(j.at("beta_col"), "beta_col");

  if (!(c.t_end_ps > 0.0)) throw ConfigError("t_end_ps: must be > 0");
  if (!(c.integration_T_ps > 0.0)) throw ConfigError("integration_T_ps: must be > 0");
  if (c.spectrometer_nu_uev && !(*c.spectrometer_nu_uev > 0.0))
    throw ConfigError("spectrometer_nu_uev: must be > 0");
  if (!(c.gamma_b_inv_ps > 0.0)) throw ConfigError("gamma_b_inv_ps: must be > 0");
  if (!(c.cavity_peak_inv_ps > 0.0)) throw ConfigError("cavity_peak_inv_ps: must be > 0");
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  json j;
  j["delta_mev"] = delta_mev;
  j["omega_uev"] = omega_uev;
  j["kappa_mev"] = kappa_mev;
  j["gamma_b_inv_ps"] = gamma_b_inv_ps;
  j["cavity_peak_inv_ps"] = cavity_peak_inv_ps;
  j["xi_mev"] = xi_mev;
  j["cavity_center_mev"] = cavity_center_mev.value_or(delta_mev);
  j["dephasing_mode"] = dephasing_mode;
  j["gamma_uev"] = gamma_uev;
  j["alpha_ph_ps2"] = alpha_ph_ps2;
  j["temperature_k"] = temperature_k;
  j["alpha_col"] = {alpha_col.real(), alpha_col.imag()};
  j["beta_col"] = {beta_col.real(), beta_col.imag()};
  j["t_end_ps"] = t_end_ps;
  j["n_time"] = n_time;
  if (spectrometer_nu_uev) j["spectrometer_nu_uev"] = *spectrometer_nu_uev;
  j["integration_T_ps"] = integration_T_ps;
  return j;
}

DephasingModel RunConfig::dephasing() const {
  if (dephasing_mode == "fixed") return FixedDephasing{gamma_uev};
  if (dephasing_mode == "phonon") return PhononDephasing{alpha_ph_ps2, temperature_k};
  return NoDephasing{};
}

SystemParams RunConfig::system(std::optional<double> omega_uev_override) const {
  SystemParams p;
  p.delta = mev_to_angular(delta_mev);
  p.omega_drive = energy_to_angular(omega_uev_override.value_or(omega_uev));
  p.dephasing = dephasing();
  p.collection_alpha = alpha_col;
  p.collection_beta = beta_col;
  return p;
}

SpectralDensityParams RunConfig::spectral_density() const {
  return SpectralDensityParams::from_peak_lifetime(
      mev_to_angular(kappa_mev), cavity_peak_inv_ps,
      mev_to_angular(cavity_center_mev.value_or(delta_mev)), gamma_b_inv_ps,
      mev_to_angular(xi_mev));
}

double RunConfig::nu(SpectrumMode mode) const {
  if (spectrometer_nu_uev) return energy_to_angular(*spectrometer_nu_uev);
  return mode == SpectrumMode::TimeDependent ? kTimeResolvedNu
                                             : energy_to_angular(kHighResolutionNuUeV);
}

}  // namespace zeno
