#include "realcech/catalog/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "realcech/errors.hpp"

namespace realcech {

namespace {

// Cover whose every nonempty intersection is connected. `maximal` lists the
// maximal meeting families; all their nonempty subfamilies meet.
CoverDescription single_component_cover(const std::string& name, const std::string& involution_name,
                                        const std::vector<std::string>& indices,
                                        const std::map<std::string, std::string>& involution,
                                        const std::vector<std::vector<std::string>>& maximal) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < indices.size(); ++i) pos[indices[i]] = i;
  auto sorted = [&](std::vector<std::string> s) {
    std::sort(s.begin(), s.end(), [&](const auto& a, const auto& b) { return pos.at(a) < pos.at(b); });
    return s;
  };
  std::set<std::vector<std::string>> seen;
  std::vector<std::vector<std::string>> subsets;
  for (const auto& m : maximal) {
    auto ms = sorted(m);
    for (std::uint32_t mask = 1; mask < (1u << ms.size()); ++mask) {
      std::vector<std::string> s;
      for (std::size_t k = 0; k < ms.size(); ++k)
        if (mask >> k & 1) s.push_back(ms[k]);
      if (seen.insert(s).second) subsets.push_back(s);
    }
  }
  auto comp = [](const std::vector<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : "&") + x;
    return out;
  };
  CoverDescription d;
  d.name = name;
  d.involution_name = involution_name;
  d.indices = indices;
  for (const auto& i : indices) d.involution.emplace_back(i, involution.at(i));
  for (const auto& s : subsets) {
    d.intersections.push_back({s, {comp(s)}});
    if (s.size() >= 2)
      for (std::size_t k = 0; k < s.size(); ++k) {
        auto rest = s;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        d.faces.push_back({comp(s), s[k], comp(rest)});
      }
    std::vector<std::string> image;
    for (const auto& x : s) image.push_back(involution.at(x));
    d.component_involution.emplace_back(comp(s), comp(sorted(image)));
  }
  return d;
}

std::string strip(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// "sphere_antipodal(2)", "sphere_antipodal:2" -> ("sphere_antipodal", "2")
std::pair<std::string, std::string> split_name(const std::string& raw) {
  std::string name = strip(raw);
  auto open = name.find('(');
  if (open != std::string::npos && name.back() == ')')
    return {name.substr(0, open), name.substr(open + 1, name.size() - open - 2)};
  auto colon = name.find(':');
  if (colon != std::string::npos) return {name.substr(0, colon), name.substr(colon + 1)};
  return {name, ""};
}

int parse_dimension(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 3)
    throw Error(ErrorCode::UnknownSpace, "sphere_antipodal needs a dimension, e.g. sphere_antipodal(2)");
  int n = std::stoi(s);
  if (n < 1 || n > 3) throw Error(ErrorCode::UnsupportedDimension, "sphere_antipodal supports 1 <= n <= 3");
  return n;
}

std::string torus_name(const std::string& a, const std::string& b) { return "torus(" + a + "," + b + ")"; }

void check_factor(const std::string& f) {
  if (f != "antipodal" && f != "conjugation")
    throw Error(ErrorCode::UnknownSpace, "torus factors are antipodal or conjugation, got '" + f + "'");
}

}  // namespace

C2Cover build_point_trivial() {
  CoverDescription raw = single_component_cover("point_trivial", "trivial", {"U"}, {{"U", "U"}}, {{"U"}});
  return double_fixed_indices(raw);
}

C2Cover build_point_trivial_fine() {
  CoverDescription raw =
      single_component_cover("point_trivial_fine", "trivial", {"U", "V"}, {{"U", "U"}, {"V", "V"}}, {{"U", "V"}});
  return double_fixed_indices(raw);
}

C2Cover build_free_orbit() {
  return validate_cover(single_component_cover("free_orbit", "swap", {"a", "b"}, {{"a", "b"}, {"b", "a"}}, {{"a"}, {"b"}}));
}

// Arcs A0..A(m-1) evenly spaced and slightly wider than the spacing, so only
// neighbors meet; the antipodal map shifts by m/2.
C2Cover build_circle_antipodal(int arcs) {
  if (arcs < 4 || arcs % 2 != 0) throw Error(ErrorCode::UnsupportedDimension, "antipodal circle needs an even number >= 4 of arcs");
  std::vector<std::string> idx;
  std::map<std::string, std::string> inv;
  for (int k = 0; k < arcs; ++k) idx.push_back("A" + std::to_string(k));
  for (int k = 0; k < arcs; ++k) inv[idx[k]] = idx[(k + arcs / 2) % arcs];
  std::vector<std::vector<std::string>> maximal;
  for (int k = 0; k < arcs; ++k) maximal.push_back({idx[k], idx[(k + 1) % arcs]});
  std::string name = arcs == 4 ? "circle_antipodal" : "circle_antipodal_fine";
  return validate_cover(single_component_cover(name, "antipodal", idx, inv, maximal));
}

// Caps C+ (around 1) and C- (around -1) are invariant; the arcs A (upper) and
// A' (lower) are swapped. A meets A' nowhere and C+ misses C-.
CoverDescription raw_circle_conjugation() {
  return single_component_cover("circle_conjugation", "conjugation", {"C+", "C-", "A", "A'"},
                                {{"C+", "C+"}, {"C-", "C-"}, {"A", "A'"}, {"A'", "A"}},
                                {{"C+", "A"}, {"C+", "A'"}, {"C-", "A"}, {"C-", "A'"}});
}

C2Cover build_circle_conjugation() { return double_fixed_indices(raw_circle_conjugation()); }

// 2(n+1) caps around +-e_i, just wide enough to cover: caps with distinct
// axes always meet in one convex piece, opposite caps never meet.
C2Cover build_sphere_antipodal(int n) {
  if (n < 1 || n > 3) throw Error(ErrorCode::UnsupportedDimension, "sphere_antipodal supports 1 <= n <= 3");
  std::vector<std::string> idx;
  std::map<std::string, std::string> inv;
  for (int i = 0; i <= n; ++i) {
    idx.push_back("+" + std::to_string(i));
    idx.push_back("-" + std::to_string(i));
    inv["+" + std::to_string(i)] = "-" + std::to_string(i);
    inv["-" + std::to_string(i)] = "+" + std::to_string(i);
  }
  std::vector<std::vector<std::string>> maximal;
  for (std::uint32_t signs = 0; signs < (1u << (n + 1)); ++signs) {
    std::vector<std::string> m;
    for (int i = 0; i <= n; ++i) m.push_back(((signs >> i & 1) ? "-" : "+") + std::to_string(i));
    maximal.push_back(m);
  }
  return validate_cover(single_component_cover("sphere_antipodal(" + std::to_string(n) + ")", "antipodal", idx, inv, maximal));
}

C2Cover build_torus(const std::string& a, const std::string& b) {
  check_factor(a);
  check_factor(b);
  auto factor = [](const std::string& f) { return f == "antipodal" ? build_circle_antipodal() : build_circle_conjugation(); };
  return product_cover(factor(a), factor(b)).renamed(torus_name(a, b));
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"point_trivial", "one point, trivial action; the fixed set is doubled", {1}, true, false, true, ""});
    e.push_back({"point_trivial_fine", "one point covered twice, each copy doubled", {1}, true, false, true, "point_trivial"});
    e.push_back({"free_orbit", "two points swapped", {2}, true, true, false, ""});
    e.push_back({"circle_antipodal", "4 arcs, opposite arcs swapped", {1, 1}, true, true, true, ""});
    e.push_back({"circle_antipodal_fine", "8 arcs, opposite arcs swapped", {1, 1}, true, true, true, "circle_antipodal"});
    e.push_back({"circle_conjugation", "invariant caps at +-1 (doubled) and a swapped pair of arcs", {1, 1}, true, false, true, ""});
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::size_t> betti(n + 1, 0);
      betti.front() = betti.back() = 1;
      e.push_back({"sphere_antipodal(" + std::to_string(n) + ")", std::to_string(2 * (n + 1)) + " coordinate caps, antipodal",
                   betti, true, true, true, ""});
    }
    e.push_back({torus_name("antipodal", "antipodal"), "product of two antipodal circles", {1, 2, 1}, true, true, true, ""});
    e.push_back({torus_name("antipodal", "conjugation"), "antipodal circle times conjugation circle", {1, 2, 1}, true, true, true, ""});
    return e;
  }();
  return entries;
}

std::vector<std::string> all_space_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog_entries()) out.push_back(e.name);
  out.push_back(torus_name("conjugation", "antipodal"));
  out.push_back(torus_name("conjugation", "conjugation"));
  return out;
}

CatalogEntry catalog_entry(const std::string& raw) {
  auto [base, arg] = split_name(raw);
  if (base == "sphere_antipodal") {
    int n = parse_dimension(arg);
    for (const auto& e : catalog_entries())
      if (e.name == "sphere_antipodal(" + std::to_string(n) + ")") return e;
  }
  if (base == "torus") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::UnknownSpace, "torus needs two factors, e.g. torus(antipodal,conjugation)");
    std::string a = arg.substr(0, comma), b = arg.substr(comma + 1);
    check_factor(a);
    check_factor(b);
    for (const auto& e : catalog_entries())
      if (e.name == torus_name(a, b)) return e;
    return {torus_name(a, b), "product of a " + a + " circle and a " + b + " circle", {1, 2, 1}, true,
            a == "antipodal" || b == "antipodal", true, ""};
  }
  if (arg.empty())
    for (const auto& e : catalog_entries())
      if (e.name == base) return e;
  throw Error(ErrorCode::UnknownSpace, "unknown space '" + raw + "'");
}

C2Cover build_space(const std::string& raw) {
  CatalogEntry e = catalog_entry(raw);
  auto [base, arg] = split_name(e.name);
  if (base == "point_trivial") return build_point_trivial();
  if (base == "point_trivial_fine") return build_point_trivial_fine();
  if (base == "free_orbit") return build_free_orbit();
  if (base == "circle_antipodal") return build_circle_antipodal(4);
  if (base == "circle_antipodal_fine") return build_circle_antipodal(8);
  if (base == "circle_conjugation") return build_circle_conjugation();
  if (base == "sphere_antipodal") return build_sphere_antipodal(parse_dimension(arg));
  if (base == "torus") {
    auto comma = arg.find(',');
    return build_torus(arg.substr(0, comma), arg.substr(comma + 1));
  }
  throw Error(ErrorCode::UnknownSpace, "unknown space '" + raw + "'");
}

}  // namespace realcech
