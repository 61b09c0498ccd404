#include "realcech/exactalg/group.hpp"

#include <algorithm>

#include "realcech/errors.hpp"

namespace realcech {

std::vector<Integer> invariant_factor_form(std::vector<Integer> orders) {
  for (auto& d : orders) {
    if (sgn(d) == 0) throw Error(ErrorCode::ShapeMismatch, "zero order passed to invariant_factor_form");
    d = abs(d);
  }
  // Pairwise gcd/lcm exchange: after pass i, orders[i] divides every later entry.
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      if (orders[j] % orders[i] == 0) continue;
      Integer g = gcd(orders[i], orders[j]);
      Integer l = lcm(orders[i], orders[j]);
      orders[i] = g;
      orders[j] = l;
    }
  }
  std::vector<Integer> out;
  for (auto& d : orders)
    if (d != 1) out.push_back(std::move(d));
  return out;
}

GroupDescriptor GroupDescriptor::from_cyclic(std::size_t rank, std::vector<Integer> orders) {
  GroupDescriptor g;
  g.rank = rank;
  std::vector<Integer> finite;
  for (auto& d : orders) {
    if (sgn(d) == 0)
      ++g.rank;
    else
      finite.push_back(std::move(d));
  }
  g.torsion = invariant_factor_form(std::move(finite));
  return g;
}

namespace {

void append_free(std::string& out, const char* symbol, std::size_t n) {
  if (n == 0) return;
  if (!out.empty()) out += " + ";
  out += symbol;
  if (n > 1) out += "^" + std::to_string(n);
}

void append_torsion(std::string& out, const std::vector<Integer>& torsion) {
  for (const auto& d : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
}

}  // namespace

std::string GroupDescriptor::to_string() const {
  std::string out;
  append_free(out, "Z", rank);
  append_torsion(out, torsion);
  return out.empty() ? "0" : out;
}

std::string ExtendedGroup::to_string() const {
  std::string out;
  append_free(out, "Z", free_rank);
  append_free(out, "Q", rational_dim);
  append_free(out, "(Q/Z)", divisible_rank);
  append_torsion(out, torsion);
  return out.empty() ? "0" : out;
}

}  // namespace realcech
