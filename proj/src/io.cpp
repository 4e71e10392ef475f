#include "toric/io.hpp"

#include <sstream>

namespace toric {

namespace {

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    auto q = rat_from_string(j.get<std::string>());
    if (q && denominator(*q) == 1) return numerator(*q);
  }
  throw Error("json_schema", "expected an integer");
}

Json int_to_json(const Int& v) {
  // Entries at desk scale fit in 64 bits; fall back to strings if not.
  if (v >= std::numeric_limits<long long>::min() &&
      v <= std::numeric_limits<long long>::max())
    return Json(v.convert_to<long long>());
  std::ostringstream os;
  os << v;
  return Json(os.str());
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Json rat_to_json(const Rat& q) {
  if (denominator(q) == 1) return int_to_json(numerator(q));
  return Json(to_string(q));
}

Fan fan_from_json(const Json& j) {
  if (!j.is_object()) throw Error("json_schema", "fan must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw Error("json_schema", "fan needs an integer \"dim\"");
  if (!j.contains("rays") || !j["rays"].is_array())
    throw Error("json_schema", "fan needs a \"rays\" array");
  if (!j.contains("max_cones") || !j["max_cones"].is_array())
    throw Error("json_schema", "fan needs a \"max_cones\" array");
  int dim = j["dim"].get<int>();
  std::vector<Vec> rays;
  for (const Json& rj : j["rays"]) {
    if (!rj.is_array()) throw Error("json_schema", "each ray must be an array");
    Vec v;
    for (const Json& x : rj) v.push_back(int_from_json(x));
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<int>> cones;
  for (const Json& cj : j["max_cones"]) {
    if (!cj.is_array()) throw Error("json_schema", "each cone must be an array of ray indices");
    std::vector<int> c;
    for (const Json& x : cj) {
      if (!x.is_number_integer()) throw Error("json_schema", "ray indices must be integers");
      c.push_back(x.get<int>());
    }
    cones.push_back(std::move(c));
  }
  std::optional<std::string> name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error("json_schema", "\"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  return Fan(dim, std::move(rays), std::move(cones), std::move(name));
}

Fan fan_from_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("json_parse", "input is not valid JSON");
  return fan_from_json(j);
}

Json fan_to_json(const Fan& fan) {
  Json j;
  j["dim"] = fan.dim();
  Json rays = Json::array();
  for (const Vec& v : fan.rays()) {
    Json rj = Json::array();
    for (const Int& x : v) rj.push_back(int_to_json(x));
    rays.push_back(std::move(rj));
  }
  j["rays"] = std::move(rays);
  Json cones = Json::array();
  for (const Cone& c : fan.max_cones()) cones.push_back(c.rays);
  j["max_cones"] = std::move(cones);
  if (fan.name()) j["name"] = *fan.name();
  return j;
}

std::string fan_digest(const Fan& fan) {
  Json j = fan_to_json(fan);
  j.erase("name");
  std::ostringstream os;
  os << std::hex << fnv1a(j.dump());
  return os.str();
}

TorusDivisor divisor_from_json(const Json& j, const Fan& fan) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw Error("json_schema", "divisor needs a \"coeffs\" array");
  RatVec coeffs;
  for (const Json& x : j["coeffs"]) {
    if (x.is_number_integer()) {
      coeffs.push_back(Rat(x.get<long long>()));
    } else if (x.is_string()) {
      auto q = rat_from_string(x.get<std::string>());
      if (!q) throw Error("json_schema", "bad rational string in coeffs");
      coeffs.push_back(*q);
    } else {
      throw Error("json_schema", "coefficients must be integers or \"p/q\" strings");
    }
  }
  if (static_cast<int>(coeffs.size()) != fan.ray_count())
    throw Error("divisor_length_mismatch", "coefficient count does not match ray count");
  return TorusDivisor(std::move(coeffs));
}

Json divisor_to_json(const TorusDivisor& d) {
  Json coeffs = Json::array();
  for (const Rat& c : d.coeffs) coeffs.push_back(rat_to_json(c));
  return Json{{"coeffs", std::move(coeffs)}};
}

Json report_to_json(const ClassificationReport& rep, const Fan& fan) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["fan_digest"] = fan_digest(fan);
  if (fan.name()) j["fan_name"] = *fan.name();
  j["n"] = rep.n;
  j["status"] = rep.status;
  j["k_q_cartier"] = rep.k_q_cartier;
  if (rep.k_q_cartier) {
    j["k_cartier"] = rep.k_cartier;
    j["k_cartier_index"] = int_to_json(rep.k_cartier_index);
  }
  j["N"] = rep.index_n ? int_to_json(*rep.index_n) : Json(nullptr);
  j["case"] = to_string(rep.matched);
  Json certs = Json::object();
  if (rep.witness) certs["witness_divisor"] = divisor_to_json(*rep.witness);
  if (rep.picard_rank) certs["picard_rank"] = *rep.picard_rank;
  if (rep.wps_weights) {
    Json w = Json::array();
    for (const Int& x : *rep.wps_weights) w.push_back(int_to_json(x));
    certs["weights"] = std::move(w);
  }
  if (rep.bundle_twists) {
    Json q = Json::array();
    for (const Int& x : *rep.bundle_twists) q.push_back(int_to_json(x));
    certs["twists"] = std::move(q);
  }
  j["certificates"] = std::move(certs);
  j["flags"] = rep.flags;
  return j;
}

Json contraction_to_json(const ContractionResult& c) {
  Json j;
  switch (c.type) {
    case ContractionType::Fibration: j["type"] = "fibration"; break;
    case ContractionType::Divisorial: j["type"] = "divisorial"; break;
    case ContractionType::Small: j["type"] = "small"; break;
  }
  j["crepant"] = c.crepant;
  j["target"] = c.target ? fan_to_json(*c.target) : Json(nullptr);
  j["merged_cones"] = c.merged_cones;
  if (!c.disappeared_rays.empty()) j["contracted_rays"] = c.disappeared_rays;
  return j;
}

}  // namespace toric
