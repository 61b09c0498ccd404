#include "realcech/coverdata/flat_cocycle.hpp"

#include <algorithm>

namespace realcech {

std::vector<PairSlot> pair_slots(const C2Cover& cover) {
  std::vector<PairSlot> out;
  const auto n = static_cast<C2Cover::Index>(cover.index_count());
  for (C2Cover::Index i = 0; i < n; ++i)
    for (C2Cover::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      C2Cover::Index key[2] = {std::min(i, j), std::max(i, j)};
      auto s = cover.find_subset(key);
      if (!s) continue;
      for (auto c : cover.subset_components(*s)) out.push_back({i, j, c});
    }
  return out;
}

FlatCocycle FlatCocycle::zero(std::shared_ptr<const C2Cover> cover) {
  FlatCocycle fc{std::move(cover), {}};
  fc.angles.assign(pair_slots(*fc.cover).size(), Rational(0));
  return fc;
}

std::size_t FlatCocycle::slot(C2Cover::Index i, C2Cover::Index j, C2Cover::ComponentId c) const {
  // Slots are sorted by (i, j, c) so binary search suffices.
  auto slots = pair_slots(*cover);
  auto it = std::lower_bound(slots.begin(), slots.end(), std::tuple{i, j, c}, [](const PairSlot& s, const auto& key) {
    return std::tuple{s.i, s.j, s.component} < key;
  });
  if (it == slots.end() || it->i != i || it->j != j || it->component != c)
    throw Error(ErrorCode::InvalidCocycle, "no angle slot for this pair and component");
  return static_cast<std::size_t>(it - slots.begin());
}

bool congruent_mod_one(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return d.get_den() == 1;
}

std::vector<Violation> flat_cocycle_violations(const FlatCocycle& fc) {
  std::vector<Violation> v;
  if (!fc.cover) return {{ErrorCode::InvalidCocycle, "flat cocycle has no cover"}};
  const C2Cover& cov = *fc.cover;
  auto slots = pair_slots(cov);
  if (fc.angles.size() != slots.size())
    return {{ErrorCode::InvalidCocycle, "expected " + std::to_string(slots.size()) + " angles, got " +
                                            std::to_string(fc.angles.size())}};
  std::map<std::tuple<C2Cover::Index, C2Cover::Index, C2Cover::ComponentId>, std::size_t> at;
  for (std::size_t k = 0; k < slots.size(); ++k) at[{slots[k].i, slots[k].j, slots[k].component}] = k;
  auto name = [&](const PairSlot& s) {
    return "(" + cov.index_name(s.i) + "," + cov.index_name(s.j) + ")@" + cov.component_name(s.component);
  };
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto& s = slots[k];
    const Rational& th = fc.angles[k];
    if (!congruent_mod_one(th, -fc.angles[at.at({s.j, s.i, s.component})]))
      v.push_back({ErrorCode::InvalidCocycle, "antisymmetry fails at " + name(s)});
    auto ti = cov.involution(s.i), tj = cov.involution(s.j);
    if (!congruent_mod_one(fc.angles[at.at({ti, tj, cov.component_involution(s.component)})], -th))
      v.push_back({ErrorCode::InvalidCocycle, "equivariance fails at " + name(s)});
  }
  for (C2Cover::SubsetId sid = 0; sid < cov.subset_count(); ++sid) {
    auto m = cov.subset_members(sid);
    if (m.size() != 3) continue;
    // every ordering (i, j, k) of the three members
    std::vector<C2Cover::Index> p(m.begin(), m.end());
    do {
      for (auto c : cov.subset_components(sid)) {
        auto jk = at.at({p[1], p[2], cov.face(c, p[0])});
        auto ik = at.at({p[0], p[2], cov.face(c, p[1])});
        auto ij = at.at({p[0], p[1], cov.face(c, p[2])});
        Rational sum = fc.angles[jk] - fc.angles[ik] + fc.angles[ij];
        if (!congruent_mod_one(sum, 0))
          v.push_back({ErrorCode::InvalidCocycle, "cocycle condition fails on (" + cov.index_name(p[0]) + "," +
                                                      cov.index_name(p[1]) + "," + cov.index_name(p[2]) + ")@" +
                                                      cov.component_name(c)});
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return v;
}

void check_flat_cocycle(const FlatCocycle& fc) {
  auto v = flat_cocycle_violations(fc);
  if (!v.empty()) throw Error(ErrorCode::InvalidCocycle, v.front().message);
}

}  // namespace realcech
