#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realcech/coverdata/cover.hpp"

namespace realcech {

struct CatalogEntry {
  std::string name;
  std::string construction;
  std::vector<std::size_t> betti;  // ranks of H^k(M; Z) forgetting the action, k = 0, 1, ...
  bool compact = true;
  bool free_action = false;
  bool connected = true;
  std::string coarse;  // for refinements: the entry this one refines
};

// Entries swept by the verification suites and the acceptance run.
const std::vector<CatalogEntry>& catalog_entries();
// Every buildable name, including the large torus.
std::vector<std::string> all_space_names();

// Accepts canonical names and the spellings sphere_antipodal:n, torus:a,b.
// Throws UnknownSpace or UnsupportedDimension.
CatalogEntry catalog_entry(const std::string& name);
C2Cover build_space(const std::string& name);

C2Cover build_point_trivial();
C2Cover build_point_trivial_fine();
C2Cover build_free_orbit();
C2Cover build_circle_antipodal(int arcs = 4);
CoverDescription raw_circle_conjugation();
C2Cover build_circle_conjugation();
C2Cover build_sphere_antipodal(int n);
// factors are "antipodal" or "conjugation"
C2Cover build_torus(const std::string& a, const std::string& b);

}  // namespace realcech
