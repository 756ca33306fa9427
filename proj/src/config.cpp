#include "tripod/config.hpp"

#include <fstream>
#include <sstream>

#include "tripod/errors.hpp"

namespace tripod {

namespace {

double get_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("config key '" + key + "' must be a number");
  return v.get<double>();
}

int get_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ValidationError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

LatticeParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  LatticeParams p;
  for (const auto& [key, v] : j.items()) {
    if (key == "eps") p.eps = get_number(v, key);
    else if (key == "omega_p") p.omega_p = get_number(v, key);
    else if (key == "alpha") {
      if (v.is_string()) p.alpha = parse_angle(v.get<std::string>());
      else p.alpha = get_number(v, key);
    }
    else if (key == "delta") p.delta = get_number(v, key);
    else if (key == "gamma") p.gamma = get_number(v, key);
    else if (key == "a") p.a = get_number(v, key);
    else if (key == "n_harmonics") p.n_harmonics = get_int(v, key);
    else if (key == "n_q") p.n_q = get_int(v, key);
    else if (key == "n_x") p.n_x = get_int(v, key);
    else if (key == "n_bands") p.n_bands = get_int(v, key);
    else throw ValidationError("unknown config key '" + key + "'");
  }
  return validate(p);
}

LatticeParams load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed config '" + path + "': " + e.what());
  }
  return params_from_json(j);
}

}  // namespace tripod
