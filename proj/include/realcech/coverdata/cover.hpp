#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace realcech {

// Cover as written in a file: names everywhere, nothing checked yet.
struct CoverDescription {
  struct Intersection {
    std::vector<std::string> sets;
    std::vector<std::string> components;
  };
  struct Face {
    std::string component;
    std::string drop;
    std::string in_component;
  };

  std::string name;
  std::string involution_name;
  std::vector<std::string> indices;
  std::vector<std::pair<std::string, std::string>> involution;
  std::vector<Intersection> intersections;
  std::vector<Face> faces;
  std::vector<std::pair<std::string, std::string>> component_involution;
  bool good = true;
  bool compact = true;
};

// Validated C2-cover. Subsets are stored in canonical order (by size, then
// lexicographically by index position); components keep the order they were
// listed in within their subset and are numbered globally in that order.
class C2Cover {
 public:
  using Index = std::uint32_t;
  using SubsetId = std::uint32_t;
  using ComponentId = std::uint32_t;

  const std::string& name() const { return name_; }
  const std::string& involution_name() const { return involution_name_; }
  bool good() const { return good_; }
  bool compact() const { return compact_; }

  std::size_t index_count() const { return index_names_.size(); }
  const std::string& index_name(Index i) const { return index_names_[i]; }
  Index involution(Index i) const { return involution_[i]; }
  std::optional<Index> find_index(std::string_view name) const;

  std::size_t subset_count() const { return subsets_.size(); }
  std::span<const Index> subset_members(SubsetId s) const { return subsets_[s].members; }
  std::span<const ComponentId> subset_components(SubsetId s) const { return subsets_[s].components; }
  // members must be sorted and distinct.
  std::optional<SubsetId> find_subset(std::span<const Index> members) const;
  std::size_t max_subset_size() const;

  std::size_t component_count() const { return components_.size(); }
  const std::string& component_name(ComponentId c) const { return components_[c].name; }
  SubsetId component_subset(ComponentId c) const { return components_[c].subset; }
  ComponentId component_involution(ComponentId c) const { return components_[c].involution; }
  // Component of support minus {dropped} containing c.
  ComponentId face(ComponentId c, Index dropped) const;
  std::optional<ComponentId> find_component(std::string_view name) const;

  // Canonical description; exporting it and validating again reproduces this cover.
  CoverDescription describe() const;

  // Sets name and flags without touching the combinatorics.
  C2Cover renamed(std::string name) const;
  C2Cover with_flags(bool good, bool compact) const;

 private:
  friend C2Cover build_validated(const CoverDescription&, bool);

  struct Subset {
    std::vector<Index> members;
    std::vector<ComponentId> components;
  };
  struct Component {
    std::string name;
    SubsetId subset = 0;
    ComponentId involution = 0;
    std::vector<ComponentId> faces;  // faces[k]: drop the k-th member of the subset
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<Index>& v) const noexcept;
  };

  std::string name_;
  std::string involution_name_;
  bool good_ = true;
  bool compact_ = true;
  std::vector<std::string> index_names_;
  std::vector<Index> involution_;
  std::vector<Subset> subsets_;
  std::vector<Component> components_;
  std::unordered_map<std::vector<Index>, SubsetId, KeyHash> subset_lookup_;
  std::unordered_map<std::string, ComponentId> component_lookup_;
  std::unordered_map<std::string, Index> index_lookup_;
};

// Throws ValidationError listing every violated invariant.
C2Cover validate_cover(const CoverDescription& raw);

// Replaces each index fixed by the involution with a swapped pair U, U' of
// copies of the same set. Free input is returned unchanged.
C2Cover double_fixed_indices(const CoverDescription& raw);
CoverDescription double_fixed_indices_description(const CoverDescription& raw);

// Indices I_a x I_b named "(i,j)", components the products of components.
C2Cover product_cover(const C2Cover& a, const C2Cover& b);

}  // namespace realcech
