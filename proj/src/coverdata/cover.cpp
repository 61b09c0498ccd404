#include "realcech/coverdata/cover.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "realcech/errors.hpp"

namespace realcech {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::string set_string(const std::vector<std::string>& names, std::span<const std::uint32_t> members) {
  std::string s = "{";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) s += ", ";
    s += names[members[k]];
  }
  return s + "}";
}

}  // namespace

std::size_t C2Cover::KeyHash::operator()(const std::vector<Index>& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Index i : v) h = (h ^ i) * 1099511628211ull;
  return h;
}

std::optional<C2Cover::Index> C2Cover::find_index(std::string_view name) const {
  auto it = index_lookup_.find(std::string(name));
  if (it == index_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<C2Cover::SubsetId> C2Cover::find_subset(std::span<const Index> members) const {
  auto it = subset_lookup_.find(std::vector<Index>(members.begin(), members.end()));
  if (it == subset_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t C2Cover::max_subset_size() const { return subsets_.empty() ? 0 : subsets_.back().members.size(); }

C2Cover::ComponentId C2Cover::face(ComponentId c, Index dropped) const {
  const auto& members = subsets_[components_[c].subset].members;
  auto it = std::lower_bound(members.begin(), members.end(), dropped);
  if (it == members.end() || *it != dropped || members.size() < 2)
    throw Error(ErrorCode::FaceIncoherence, "index " + index_names_.at(dropped) + " cannot be dropped from component " +
                                                components_[c].name);
  return components_[c].faces[it - members.begin()];
}

std::optional<C2Cover::ComponentId> C2Cover::find_component(std::string_view name) const {
  auto it = component_lookup_.find(std::string(name));
  if (it == component_lookup_.end()) return std::nullopt;
  return it->second;
}

CoverDescription C2Cover::describe() const {
  CoverDescription d;
  d.name = name_;
  d.involution_name = involution_name_;
  d.good = good_;
  d.compact = compact_;
  d.indices = index_names_;
  for (Index i = 0; i < index_count(); ++i) d.involution.emplace_back(index_names_[i], index_names_[involution_[i]]);
  for (const auto& s : subsets_) {
    CoverDescription::Intersection e;
    for (Index i : s.members) e.sets.push_back(index_names_[i]);
    for (ComponentId c : s.components) e.components.push_back(components_[c].name);
    d.intersections.push_back(std::move(e));
  }
  for (const auto& c : components_) {
    const auto& members = subsets_[c.subset].members;
    if (members.size() < 2) continue;
    for (std::size_t k = 0; k < members.size(); ++k)
      d.faces.push_back({c.name, index_names_[members[k]], components_[c.faces[k]].name});
  }
  for (const auto& c : components_) d.component_involution.emplace_back(c.name, components_[c.involution].name);
  return d;
}

C2Cover C2Cover::renamed(std::string name) const {
  C2Cover c = *this;
  c.name_ = std::move(name);
  return c;
}

C2Cover C2Cover::with_flags(bool good, bool compact) const {
  C2Cover c = *this;
  c.good_ = good;
  c.compact_ = compact;
  return c;
}

C2Cover build_validated(const CoverDescription& d, bool allow_fixed) {
  using Index = C2Cover::Index;
  std::vector<Violation> v;
  auto bad = [&](ErrorCode code, std::string msg) { v.push_back({code, std::move(msg)}); };
  auto fail_if_any = [&] {
    if (!v.empty()) throw ValidationError(v);
  };

  C2Cover out;
  out.name_ = d.name;
  out.involution_name_ = d.involution_name;
  out.good_ = d.good;
  out.compact_ = d.compact;

  // Indices and their involution.
  for (const auto& name : d.indices) {
    if (name.empty()) {
      bad(ErrorCode::MalformedDescription, "empty index name");
      continue;
    }
    if (!out.index_lookup_.emplace(name, static_cast<Index>(out.index_names_.size())).second) {
      bad(ErrorCode::MalformedDescription, "duplicate index " + name);
      continue;
    }
    out.index_names_.push_back(name);
  }
  const std::size_t n = out.index_names_.size();
  std::vector<std::uint32_t> inv(n, kNone);
  for (const auto& [from, to] : d.involution) {
    auto a = out.index_lookup_.find(from);
    auto b = out.index_lookup_.find(to);
    if (a == out.index_lookup_.end() || b == out.index_lookup_.end()) {
      bad(ErrorCode::MalformedDescription, "involution entry " + from + " -> " + to + " names an unknown index");
      continue;
    }
    if (inv[a->second] != kNone) {
      bad(ErrorCode::MalformedDescription, "involution given twice for " + from);
      continue;
    }
    inv[a->second] = b->second;
  }
  for (Index i = 0; i < n; ++i)
    if (inv[i] == kNone) bad(ErrorCode::MalformedDescription, "no involution entry for index " + out.index_names_[i]);
  fail_if_any();
  bool index_involution_ok = true;
  for (Index i = 0; i < n; ++i) {
    if (inv[inv[i]] != i) {
      bad(ErrorCode::InvolutionNotSelfInverse,
          "t(t(" + out.index_names_[i] + ")) = " + out.index_names_[inv[inv[i]]] + " on indices");
      index_involution_ok = false;
    }
    if (inv[i] == i && !allow_fixed)
      bad(ErrorCode::FixedIndexPresent, "index " + out.index_names_[i] +
                                            " is fixed by the involution; apply double_fixed_indices to split it into a "
                                            "swapped pair");
  }
  out.involution_ = inv;

  // Intersections.
  struct RawSubset {
    std::vector<Index> members;
    const std::vector<std::string>* components;
  };
  std::vector<RawSubset> raws;
  {
    std::map<std::vector<Index>, std::size_t> seen;
    std::unordered_map<std::string, int> comp_seen;
    bool malformed = false;
    for (const auto& e : d.intersections) {
      std::vector<Index> members;
      bool ok = true;
      for (const auto& s : e.sets) {
        auto it = out.index_lookup_.find(s);
        if (it == out.index_lookup_.end()) {
          bad(ErrorCode::MalformedDescription, "intersection mentions unknown index " + s);
          ok = false;
        } else {
          members.push_back(it->second);
        }
      }
      std::sort(members.begin(), members.end());
      if (ok && members.empty()) {
        bad(ErrorCode::MalformedDescription, "intersection with an empty set list");
        ok = false;
      }
      if (ok && std::adjacent_find(members.begin(), members.end()) != members.end()) {
        bad(ErrorCode::MalformedDescription, "intersection lists an index twice");
        ok = false;
      }
      if (ok && e.components.empty()) {
        bad(ErrorCode::MalformedDescription,
            "intersection " + set_string(out.index_names_, members) + " has no components; omit empty intersections");
        ok = false;
      }
      if (ok && !seen.emplace(members, raws.size()).second) {
        bad(ErrorCode::MalformedDescription, "intersection " + set_string(out.index_names_, members) + " listed twice");
        ok = false;
      }
      for (const auto& c : e.components)
        if (c.empty() || comp_seen[c]++ > 0) {
          bad(ErrorCode::MalformedDescription, "component name '" + c + "' is empty or used twice");
          ok = false;
        }
      if (!ok) {
        malformed = true;
        continue;
      }
      raws.push_back({std::move(members), &e.components});
    }
    if (malformed) fail_if_any();
  }
  std::sort(raws.begin(), raws.end(), [](const RawSubset& a, const RawSubset& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  for (const auto& r : raws) {
    auto sid = static_cast<C2Cover::SubsetId>(out.subsets_.size());
    C2Cover::Subset s{r.members, {}};
    for (const auto& name : *r.components) {
      auto cid = static_cast<C2Cover::ComponentId>(out.components_.size());
      s.components.push_back(cid);
      out.component_lookup_.emplace(name, cid);
      out.components_.push_back({name, sid, kNone, std::vector<std::uint32_t>(r.members.size() >= 2 ? r.members.size() : 0, kNone)});
    }
    out.subset_lookup_.emplace(r.members, sid);
    out.subsets_.push_back(std::move(s));
  }

  bool closed = true;
  for (const auto& s : out.subsets_) {
    if (s.members.size() < 2) continue;
    for (std::size_t k = 0; k < s.members.size(); ++k) {
      std::vector<Index> sub = s.members;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
      if (!out.subset_lookup_.count(sub)) {
        bad(ErrorCode::NotDownwardClosed, set_string(out.index_names_, s.members) + " meets but " +
                                              set_string(out.index_names_, sub) + " is missing");
        closed = false;
      }
    }
  }

  // Faces.
  bool faces_ok = closed;
  for (const auto& f : d.faces) {
    auto c = out.component_lookup_.find(f.component);
    auto x = out.index_lookup_.find(f.drop);
    auto t = out.component_lookup_.find(f.in_component);
    if (c == out.component_lookup_.end() || x == out.index_lookup_.end() || t == out.component_lookup_.end()) {
      bad(ErrorCode::MalformedDescription, "face entry (" + f.component + ", " + f.drop + ", " + f.in_component +
                                               ") names an unknown component or index");
      faces_ok = false;
      continue;
    }
    auto& comp = out.components_[c->second];
    const auto& members = out.subsets_[comp.subset].members;
    auto pos = std::lower_bound(members.begin(), members.end(), x->second);
    if (members.size() < 2 || pos == members.end() || *pos != x->second) {
      bad(ErrorCode::MalformedDescription, "face entry drops " + f.drop + " from component " + f.component +
                                               " whose support does not allow it");
      faces_ok = false;
      continue;
    }
    std::vector<Index> sub = members;
    sub.erase(sub.begin() + (pos - members.begin()));
    auto target_subset = out.components_[t->second].subset;
    if (out.subsets_[target_subset].members != sub) {
      bad(ErrorCode::FaceIncoherence, "face of " + f.component + " dropping " + f.drop + " is " + f.in_component +
                                          ", which lies over " +
                                          set_string(out.index_names_, out.subsets_[target_subset].members) +
                                          " instead of " + set_string(out.index_names_, sub));
      faces_ok = false;
      continue;
    }
    auto& slot = comp.faces[pos - members.begin()];
    if (slot != kNone && slot != t->second) {
      bad(ErrorCode::MalformedDescription, "conflicting faces for " + f.component + " dropping " + f.drop);
      faces_ok = false;
      continue;
    }
    slot = t->second;
  }
  if (closed) {
    for (const auto& comp : out.components_)
      for (std::size_t k = 0; k < comp.faces.size(); ++k)
        if (comp.faces[k] == kNone) {
          bad(ErrorCode::MalformedDescription,
              "missing face of " + comp.name + " dropping " + out.index_names_[out.subsets_[comp.subset].members[k]]);
          faces_ok = false;
        }
  }

  auto face_of = [&](std::uint32_t c, Index x) {
    const auto& members = out.subsets_[out.components_[c].subset].members;
    auto pos = std::lower_bound(members.begin(), members.end(), x);
    return out.components_[c].faces[pos - members.begin()];
  };

  if (faces_ok) {
    for (const auto& comp : out.components_) {
      const auto& members = out.subsets_[comp.subset].members;
      if (members.size() < 3) continue;
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          auto ab = face_of(comp.faces[a], members[b]);
          auto ba = face_of(comp.faces[b], members[a]);
          if (ab != ba)
            bad(ErrorCode::FaceIncoherence, "dropping " + out.index_names_[members[a]] + " and " +
                                                out.index_names_[members[b]] + " from " + comp.name +
                                                " reaches " + out.components_[ab].name + " or " +
                                                out.components_[ba].name + " depending on the order");
        }
    }
  }

  // Component involution.
  bool comp_inv_ok = true;
  for (const auto& [from, to] : d.component_involution) {
    auto a = out.component_lookup_.find(from);
    auto b = out.component_lookup_.find(to);
    if (a == out.component_lookup_.end() || b == out.component_lookup_.end()) {
      bad(ErrorCode::MalformedDescription, "component involution entry " + from + " -> " + to +
                                               " names an unknown component");
      comp_inv_ok = false;
      continue;
    }
    if (out.components_[a->second].involution != kNone) {
      bad(ErrorCode::MalformedDescription, "component involution given twice for " + from);
      comp_inv_ok = false;
      continue;
    }
    out.components_[a->second].involution = b->second;
  }
  for (const auto& comp : out.components_)
    if (comp.involution == kNone) {
      bad(ErrorCode::MalformedDescription, "no component involution entry for " + comp.name);
      comp_inv_ok = false;
    }
  if (comp_inv_ok) {
    for (const auto& comp : out.components_) {
      if (out.components_[comp.involution].involution != out.component_lookup_.at(comp.name))
        bad(ErrorCode::InvolutionNotSelfInverse, "component involution applied twice moves " + comp.name);
      if (!index_involution_ok) continue;
      const auto& members = out.subsets_[comp.subset].members;
      std::vector<Index> image;
      for (Index i : members) image.push_back(inv[i]);
      std::sort(image.begin(), image.end());
      const auto& got = out.subsets_[out.components_[comp.involution].subset].members;
      if (got != image) {
        bad(ErrorCode::InvolutionFaceMismatch, "component " + comp.name + " of " +
                                                   set_string(out.index_names_, members) + " is sent to " +
                                                   out.components_[comp.involution].name + " of " +
                                                   set_string(out.index_names_, got) + ", expected a component of " +
                                                   set_string(out.index_names_, image));
        continue;
      }
      if (!faces_ok) continue;
      for (std::size_t k = 0; k < comp.faces.size(); ++k) {
        auto lhs = out.components_[comp.faces[k]].involution;
        auto rhs = face_of(comp.involution, inv[members[k]]);
        if (lhs != rhs)
          bad(ErrorCode::InvolutionFaceMismatch, "involution and face dropping " + out.index_names_[members[k]] +
                                                     " do not commute on " + comp.name);
      }
    }
  }
  fail_if_any();
  return out;
}

C2Cover validate_cover(const CoverDescription& raw) { return build_validated(raw, false); }

CoverDescription double_fixed_indices_description(const CoverDescription& raw) {
  using Index = C2Cover::Index;
  C2Cover base = build_validated(raw, true);
  const std::size_t n = base.index_count();
  std::vector<char> fixed(n, 0);
  bool any = false;
  for (Index i = 0; i < n; ++i)
    if (base.involution(i) == i) fixed[i] = any = 1;
  if (!any) return base.describe();

  CoverDescription d;
  d.name = base.name();
  d.involution_name = base.involution_name();
  d.good = base.good();
  d.compact = base.compact();
  std::vector<std::string> copy(n);
  auto taken = [&](const std::string& s) {
    if (base.find_index(s)) return true;
    return std::find(copy.begin(), copy.end(), s) != copy.end();
  };
  for (Index i = 0; i < n; ++i) {
    d.indices.push_back(base.index_name(i));
    if (!fixed[i]) continue;
    std::string c = base.index_name(i) + "'";
    while (taken(c)) c += "'";
    copy[i] = c;
    d.indices.push_back(c);
  }
  for (Index i = 0; i < n; ++i) {
    if (fixed[i]) {
      d.involution.emplace_back(base.index_name(i), copy[i]);
      d.involution.emplace_back(copy[i], base.index_name(i));
    } else {
      d.involution.emplace_back(base.index_name(i), base.index_name(base.involution(i)));
    }
  }

  // A choice assigns each fixed member of a subset to its original (0), its copy (1) or both (2).
  using Choice = std::vector<int>;
  auto fixed_members = [&](C2Cover::SubsetId s) {
    std::vector<Index> f;
    for (Index i : base.subset_members(s))
      if (fixed[i]) f.push_back(i);
    return f;
  };
  auto tagged = [&](C2Cover::ComponentId c, const Choice& ch) {
    if (ch.empty()) return base.component_name(c);
    std::string s = base.component_name(c) + "#";
    for (int x : ch) s += static_cast<char>('0' + x);
    return s;
  };
  auto without = [](Choice ch, std::size_t k) {
    ch.erase(ch.begin() + static_cast<std::ptrdiff_t>(k));
    return ch;
  };

  for (C2Cover::SubsetId s = 0; s < base.subset_count(); ++s) {
    auto f = fixed_members(s);
    std::size_t total = 1;
    for (std::size_t k = 0; k < f.size(); ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Choice ch(f.size());
      for (std::size_t k = f.size(), c = code; k-- > 0; c /= 3) ch[k] = static_cast<int>(c % 3);
      CoverDescription::Intersection e;
      // members, each with how to take its face
      struct Member {
        std::string name;
        Index original;
        std::size_t fixed_pos;  // position in f, or npos
        int which;              // 0 original, 1 copy
      };
      std::vector<Member> ms;
      for (Index i : base.subset_members(s)) {
        if (!fixed[i]) {
          ms.push_back({base.index_name(i), i, std::string::npos, 0});
          continue;
        }
        std::size_t p = std::find(f.begin(), f.end(), i) - f.begin();
        if (ch[p] != 1) ms.push_back({base.index_name(i), i, p, 0});
        if (ch[p] != 0) ms.push_back({copy[i], i, p, 1});
      }
      for (const auto& m : ms) e.sets.push_back(m.name);
      for (auto c : base.subset_components(s)) {
        e.components.push_back(tagged(c, ch));
        if (ms.size() >= 2) {
          for (const auto& m : ms) {
            std::string target;
            if (m.fixed_pos == std::string::npos) {
              target = tagged(base.face(c, m.original), ch);
            } else if (ch[m.fixed_pos] == 2) {
              Choice next = ch;
              next[m.fixed_pos] = m.which == 0 ? 1 : 0;
              target = tagged(c, next);
            } else {
              target = tagged(base.face(c, m.original), without(ch, m.fixed_pos));
            }
            d.faces.push_back({tagged(c, ch), m.name, target});
          }
        }
        Choice swapped = ch;
        for (int& x : swapped)
          if (x != 2) x = 1 - x;
        d.component_involution.emplace_back(tagged(c, ch), tagged(base.component_involution(c), swapped));
      }
      d.intersections.push_back(std::move(e));
    }
  }
  return validate_cover(d).describe();
}

C2Cover double_fixed_indices(const CoverDescription& raw) { return validate_cover(double_fixed_indices_description(raw)); }

C2Cover product_cover(const C2Cover& a, const C2Cover& b) {
  using Index = C2Cover::Index;
  const std::size_t nb = b.index_count();
  CoverDescription d;
  d.name = a.name() + "_x_" + b.name();
  d.involution_name = a.involution_name() + " x " + b.involution_name();
  d.good = a.good() && b.good();
  d.compact = a.compact() && b.compact();
  auto pname = [&](Index i, Index j) { return "(" + a.index_name(i) + "," + b.index_name(j) + ")"; };
  for (Index i = 0; i < a.index_count(); ++i)
    for (Index j = 0; j < nb; ++j) d.indices.push_back(pname(i, j));
  for (Index i = 0; i < a.index_count(); ++i)
    for (Index j = 0; j < nb; ++j) d.involution.emplace_back(pname(i, j), pname(a.involution(i), b.involution(j)));

  // (sorted product members, component of a, component of b) -> name
  std::map<std::tuple<std::vector<Index>, C2Cover::ComponentId, C2Cover::ComponentId>, std::string> names;
  struct Entry {
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<Index> key;
  };
  std::vector<Entry> entries;
  for (C2Cover::SubsetId p = 0; p < a.subset_count(); ++p) {
    auto pm = a.subset_members(p);
    for (C2Cover::SubsetId q = 0; q < b.subset_count(); ++q) {
      auto qm = b.subset_members(q);
      const std::size_t cells = pm.size() * qm.size();
      if (cells > 20) throw Error(ErrorCode::UnsupportedDimension, "product intersection too large to enumerate");
      for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
        std::uint32_t rows = 0, cols = 0;
        for (std::size_t k = 0; k < cells; ++k)
          if (mask >> k & 1) {
            rows |= 1u << (k / qm.size());
            cols |= 1u << (k % qm.size());
          }
        if (rows != (1u << pm.size()) - 1 || cols != (1u << qm.size()) - 1) continue;
        Entry e;
        for (std::size_t k = 0; k < cells; ++k)
          if (mask >> k & 1) {
            Index i = pm[k / qm.size()], j = qm[k % qm.size()];
            e.pairs.emplace_back(i, j);
            e.key.push_back(static_cast<Index>(i * nb + j));
          }
        std::sort(e.key.begin(), e.key.end());
        for (auto ca : a.subset_components(p))
          for (auto cb : b.subset_components(q))
            names.emplace(std::tuple{e.key, ca, cb}, a.component_name(ca) + "*" + b.component_name(cb) + "@" +
                                                         std::to_string(entries.size()));
        entries.push_back(std::move(e));
      }
    }
  }

  auto project = [](const std::vector<std::pair<Index, Index>>& pairs, bool first) {
    std::vector<Index> out;
    for (auto [i, j] : pairs) out.push_back(first ? i : j);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  for (const auto& e : entries) {
    auto pa = project(e.pairs, true), pb = project(e.pairs, false);
    auto p = *a.find_subset(pa);
    auto q = *b.find_subset(pb);
    CoverDescription::Intersection inter;
    for (auto [i, j] : e.pairs) inter.sets.push_back(pname(i, j));
    for (auto ca : a.subset_components(p))
      for (auto cb : b.subset_components(q)) {
        const std::string& me = names.at({e.key, ca, cb});
        inter.components.push_back(me);
        if (e.pairs.size() >= 2) {
          for (std::size_t k = 0; k < e.pairs.size(); ++k) {
            auto rest = e.pairs;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
            auto ra = project(rest, true), rb = project(rest, false);
            auto fa = ra.size() == pa.size() ? ca : a.face(ca, e.pairs[k].first);
            auto fb = rb.size() == pb.size() ? cb : b.face(cb, e.pairs[k].second);
            std::vector<Index> key;
            for (auto [i, j] : rest) key.push_back(static_cast<Index>(i * nb + j));
            std::sort(key.begin(), key.end());
            d.faces.push_back({me, pname(e.pairs[k].first, e.pairs[k].second), names.at({key, fa, fb})});
          }
        }
        std::vector<Index> tkey;
        for (auto [i, j] : e.pairs) tkey.push_back(static_cast<Index>(a.involution(i) * nb + b.involution(j)));
        std::sort(tkey.begin(), tkey.end());
        d.component_involution.emplace_back(
            me, names.at({tkey, a.component_involution(ca), b.component_involution(cb)}));
      }
    d.intersections.push_back(std::move(inter));
  }
  return validate_cover(d);
}

}  // namespace realcech
