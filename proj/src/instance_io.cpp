#include "toricmld/instance_io.hpp"

#include "json.hpp"

namespace toric {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::InvalidDocument, path + ": " + what);
}

Int read_int(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Int(v.get<unsigned long>()) : Int(v.get<long>());
  if (v.is_string()) {
    Int x;
    if (x.set_str(v.get<std::string>(), 10) == 0) return x;
  }
  bad(path, "expected an integer");
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(to_string(x));
}

Instance read_instance(const json& doc, const std::string& root) {
  if (!doc.is_object()) bad(root, "expected an object");
  Instance inst;
  if (doc.contains("key")) {
    if (!doc["key"].is_string()) bad(root + ".key", "expected a string");
    inst.key = doc["key"].get<std::string>();
  }
  if (!doc.contains("dim")) bad(root + ".dim", "missing");
  Int d = read_int(doc["dim"], root + ".dim");
  if (d < 1 || d > 4) bad(root + ".dim", "must be in 1..4");
  inst.dim = d.get_ui();

  if (!doc.contains("rays") || !doc["rays"].is_array()) bad(root + ".rays", "expected a list of integer lists");
  const json& rays = doc["rays"];
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::string p = root + ".rays[" + std::to_string(i) + "]";
    if (!rays[i].is_array()) bad(p, "expected a list of integers");
    if (rays[i].size() != inst.dim) bad(p, "length must equal dim");
    IntVector v;
    for (std::size_t j = 0; j < rays[i].size(); ++j)
      v.push_back(read_int(rays[i][j], p + "[" + std::to_string(j) + "]"));
    inst.rays.push_back(v);
  }

  if (!doc.contains("coefficients") || !doc["coefficients"].is_array())
    bad(root + ".coefficients", "expected a list of tagged coefficients");
  const json& cs = doc["coefficients"];
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string p = root + ".coefficients[" + std::to_string(i) + "]";
    if (!cs[i].is_object() || !cs[i].contains("type") || !cs[i]["type"].is_string())
      bad(p, "expected {\"type\": \"standard\"|\"one\", ...}");
    std::string type = cs[i]["type"].get<std::string>();
    if (type == "one") {
      inst.coeffs.push_back(BoundaryCoefficient::one());
    } else if (type == "standard") {
      if (!cs[i].contains("l")) bad(p + ".l", "missing");
      Int l = read_int(cs[i]["l"], p + ".l");
      if (l < 1) bad(p + ".l", "must be >= 1");
      inst.coeffs.push_back(BoundaryCoefficient::standard(l));
    } else {
      bad(p + ".type", "unknown coefficient type '" + type + "'");
    }
  }
  return inst;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("not valid JSON: ") + e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& json_text) { return read_instance(parse_json(json_text), "$"); }

std::vector<Instance> parse_instance_list(const std::string& json_text) {
  json doc = parse_json(json_text);
  std::string root = "$";
  if (doc.is_object() && doc.contains("instances")) {
    doc = doc["instances"];
    root = "$.instances";
  }
  if (!doc.is_array()) bad(root, "expected a list of instance documents");
  std::vector<Instance> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    out.push_back(read_instance(doc[i], root + "[" + std::to_string(i) + "]"));
    if (out.back().key.empty()) out.back().key = "list " + std::to_string(i);
  }
  return out;
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  if (!inst.key.empty()) doc["key"] = inst.key;
  doc["dim"] = inst.dim;
  json rays = json::array();
  for (const auto& r : inst.rays) {
    json v = json::array();
    for (const auto& x : r) v.push_back(int_json(x));
    rays.push_back(v);
  }
  doc["rays"] = rays;
  json cs = json::array();
  for (const auto& c : inst.coeffs) {
    if (c.is_one()) cs.push_back({{"type", "one"}});
    else cs.push_back({{"type", "standard"}, {"l", int_json(c.l())}});
  }
  doc["coefficients"] = cs;
  return doc.dump(2) + "\n";
}

std::string report_json(const LogCanonicalReport& r) {
  json doc;
  json psi = json::array();
  for (const auto& x : r.psi) psi.push_back(to_string(x));
  doc["psi"] = psi;
  doc["n"] = int_json(r.n);
  doc["a"] = to_string(r.a);
  doc["q"] = int_json(r.q);
  json w = json::array();
  for (const auto& x : r.witness) w.push_back(int_json(x));
  doc["witness"] = w;
  doc["klt"] = r.klt;
  doc["value_group_flag"] = r.value_group_flag;
  return doc.dump(2) + "\n";
}

std::string report_text(const LogCanonicalReport& r) {
  return "psi: " + to_string(r.psi) + "\nn: " + to_string(r.n) + "\na: " + to_string(r.a) + "\nq: " + to_string(r.q) +
         "\nwitness: " + to_string(r.witness) + "\nklt: " + (r.klt ? "true" : "false") + "\n";
}

}  // namespace toric
