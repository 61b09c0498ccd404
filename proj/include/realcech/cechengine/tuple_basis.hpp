#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "realcech/coverdata/cover.hpp"

namespace realcech {

// s u {x} for every subset s and index x, precomputed.
class SupportTable {
 public:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  explicit SupportTable(const C2Cover& cover);

  std::uint32_t singleton(C2Cover::Index x) const { return singletons_[x]; }
  // kEmpty when the union has empty intersection.
  std::uint32_t extend(std::uint32_t subset, C2Cover::Index x) const { return table_[subset * n_ + x]; }
  // Position of a component within its subset's component list.
  std::uint32_t component_position(C2Cover::ComponentId c) const { return comp_pos_[c]; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> singletons_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> comp_pos_;
};

// Basis of Cech p-cochains: ordered tuples (i_0, ..., i_p) whose sets meet,
// each paired with a component of the intersection of its support. Tuples are
// in lexicographic order and their components contiguous, in cover order. By
// default tuples with two equal consecutive entries are left out.
class TupleBasis {
 public:
  TupleBasis(const C2Cover& cover, const SupportTable& table, int degree, bool include_degenerate = false);

  int degree() const { return degree_; }
  std::size_t size() const { return components_.size(); }
  std::size_t tuple_count() const { return supports_.size(); }

  std::span<const C2Cover::Index> tuple_of(std::size_t element) const { return tuple(tuple_id_[element]); }
  C2Cover::ComponentId component(std::size_t element) const { return components_[element]; }

  std::span<const C2Cover::Index> tuple(std::size_t t) const {
    return {tuples_.data() + t * (degree_ + 1), static_cast<std::size_t>(degree_ + 1)};
  }
  std::uint32_t support(std::size_t t) const { return supports_[t]; }
  std::size_t first_element(std::size_t t) const { return starts_[t]; }

  std::optional<std::size_t> find_tuple(std::span<const C2Cover::Index> tuple) const;
  // Element for (tuple, component); the component must lie over the tuple's support.
  std::optional<std::size_t> find(std::span<const C2Cover::Index> tuple, C2Cover::ComponentId c,
                                  const SupportTable& table) const;

 private:
  int degree_;
  std::vector<C2Cover::Index> tuples_;
  std::vector<std::uint32_t> supports_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> tuple_id_;
  std::vector<C2Cover::ComponentId> components_;
};

}  // namespace realcech
