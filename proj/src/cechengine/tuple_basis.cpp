#include "realcech/cechengine/tuple_basis.hpp"

#include <algorithm>

namespace realcech {

SupportTable::SupportTable(const C2Cover& cover)
    : n_(cover.index_count()),
      singletons_(n_, kEmpty),
      table_(cover.subset_count() * n_, kEmpty),
      comp_pos_(cover.component_count(), 0) {
  std::vector<C2Cover::Index> buf;
  for (C2Cover::SubsetId s = 0; s < cover.subset_count(); ++s) {
    auto members = cover.subset_members(s);
    if (members.size() == 1) singletons_[members[0]] = s;
    auto comps = cover.subset_components(s);
    for (std::uint32_t k = 0; k < comps.size(); ++k) comp_pos_[comps[k]] = k;
    for (C2Cover::Index x = 0; x < n_; ++x) {
      if (std::binary_search(members.begin(), members.end(), x)) {
        table_[s * n_ + x] = s;
        continue;
      }
      buf.assign(members.begin(), members.end());
      buf.insert(std::upper_bound(buf.begin(), buf.end(), x), x);
      if (auto t = cover.find_subset(buf)) table_[s * n_ + x] = *t;
    }
  }
}

TupleBasis::TupleBasis(const C2Cover& cover, const SupportTable& table, int degree, bool include_degenerate)
    : degree_(degree) {
  const auto n = static_cast<C2Cover::Index>(cover.index_count());
  const std::size_t len = static_cast<std::size_t>(degree) + 1;
  std::vector<C2Cover::Index> cur(len);
  std::vector<std::uint32_t> sup(len);
  // Iterative depth-first search in lexicographic order.
  std::vector<C2Cover::Index> next(len, 0);
  std::size_t depth = 0;
  next[0] = 0;
  while (true) {
    if (next[depth] >= n) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    C2Cover::Index x = next[depth]++;
    std::uint32_t s;
    if (depth == 0) {
      s = table.singleton(x);
    } else {
      if (!include_degenerate && cur[depth - 1] == x) continue;
      s = table.extend(sup[depth - 1], x);
    }
    if (s == SupportTable::kEmpty) continue;
    cur[depth] = x;
    sup[depth] = s;
    if (depth + 1 == len) {
      auto t = static_cast<std::uint32_t>(supports_.size());
      tuples_.insert(tuples_.end(), cur.begin(), cur.end());
      supports_.push_back(s);
      starts_.push_back(static_cast<std::uint32_t>(components_.size()));
      for (auto c : cover.subset_components(s)) {
        components_.push_back(c);
        tuple_id_.push_back(t);
      }
      continue;
    }
    ++depth;
    next[depth] = 0;
  }
  starts_.push_back(static_cast<std::uint32_t>(components_.size()));
}

std::optional<std::size_t> TupleBasis::find_tuple(std::span<const C2Cover::Index> key) const {
  std::size_t lo = 0, hi = supports_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto t = tuple(mid);
    if (std::lexicographical_compare(t.begin(), t.end(), key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == supports_.size()) return std::nullopt;
  auto t = tuple(lo);
  if (!std::equal(t.begin(), t.end(), key.begin(), key.end())) return std::nullopt;
  return lo;
}

std::optional<std::size_t> TupleBasis::find(std::span<const C2Cover::Index> key, C2Cover::ComponentId c,
                                            const SupportTable& table) const {
  auto t = find_tuple(key);
  if (!t) return std::nullopt;
  return starts_[*t] + table.component_position(c);
}

}  // namespace realcech
