#include "realcech/coverdata/cover_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "realcech/errors.hpp"

namespace realcech {

using json = nlohmann::ordered_json;

std::string cover_to_json(const CoverDescription& d) {
  json j;
  j["name"] = d.name;
  j["involution_name"] = d.involution_name;
  j["indices"] = d.indices;
  j["involution"] = json::object();
  for (const auto& [a, b] : d.involution) j["involution"][a] = b;
  j["intersections"] = json::array();
  for (const auto& e : d.intersections) j["intersections"].push_back({{"sets", e.sets}, {"components", e.components}});
  j["faces"] = json::array();
  for (const auto& f : d.faces)
    j["faces"].push_back({{"component", f.component}, {"drop", f.drop}, {"in_component", f.in_component}});
  j["component_involution"] = json::object();
  for (const auto& [a, b] : d.component_involution) j["component_involution"][a] = b;
  j["good"] = d.good;
  j["compact"] = d.compact;
  return j.dump(2) + "\n";
}

std::string cover_to_json(const C2Cover& c) { return cover_to_json(c.describe()); }

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDescription, what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(string_of(x, what));
  return out;
}

std::vector<std::pair<std::string, std::string>> map_of(const json& j, const char* what) {
  if (!j.is_object()) malformed(std::string(what) + " must be an object");
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), string_of(it.value(), what));
  return out;
}

bool bool_of(const json& j, const char* what) {
  if (!j.is_boolean()) malformed(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

}  // namespace

CoverDescription cover_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) malformed("cover file must hold a JSON object");
  CoverDescription d;
  d.name = string_of(field(j, "name"), "name");
  d.involution_name = string_of(field(j, "involution_name"), "involution_name");
  d.indices = strings_of(field(j, "indices"), "indices");
  d.involution = map_of(field(j, "involution"), "involution");
  const json& inter = field(j, "intersections");
  if (!inter.is_array()) malformed("intersections must be an array");
  for (const auto& e : inter) {
    if (!e.is_object()) malformed("intersection entries must be objects");
    d.intersections.push_back({strings_of(field(e, "sets"), "sets"), strings_of(field(e, "components"), "components")});
  }
  const json& faces = field(j, "faces");
  if (!faces.is_array()) malformed("faces must be an array");
  for (const auto& f : faces) {
    if (!f.is_object()) malformed("face entries must be objects");
    d.faces.push_back({string_of(field(f, "component"), "component"), string_of(field(f, "drop"), "drop"),
                       string_of(field(f, "in_component"), "in_component")});
  }
  d.component_involution = map_of(field(j, "component_involution"), "component_involution");
  d.good = bool_of(field(j, "good"), "good");
  d.compact = bool_of(field(j, "compact"), "compact");
  return d;
}

CoverDescription read_cover_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read cover file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return cover_from_json(ss.str());
}

void write_cover_file(const std::filesystem::path& path, const C2Cover& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) malformed("cannot write cover file " + path.string());
  out << cover_to_json(c);
}

}  // namespace realcech
