#include "realcech/cechengine/engine.hpp"

#include <algorithm>

#include "realcech/errors.hpp"

namespace realcech {

IntMatrix cech_coboundary(const C2Cover& cover, const SupportTable& table, const TupleBasis& from,
                          const TupleBasis& to, bool include_degenerate) {
  const std::size_t len = static_cast<std::size_t>(to.degree()) + 1;
  std::vector<IntMatrix::Triplet> trip;
  std::vector<C2Cover::Index> face(len - 1);
  for (std::size_t t = 0; t < to.tuple_count(); ++t) {
    auto tup = to.tuple(t);
    const std::size_t first = to.first_element(t), last = to.first_element(t + 1);
    for (std::size_t k = 0; k < len; ++k) {
      if (!include_degenerate && k > 0 && k + 1 < len && tup[k - 1] == tup[k + 1]) continue;
      std::copy(tup.begin(), tup.begin() + static_cast<std::ptrdiff_t>(k), face.begin());
      std::copy(tup.begin() + static_cast<std::ptrdiff_t>(k) + 1, tup.end(), face.begin() + static_cast<std::ptrdiff_t>(k));
      auto ft = from.find_tuple(face);
      if (!ft) throw Error(ErrorCode::FaceIncoherence, "face tuple missing from the Cech basis");
      // Dropping i_k shrinks the support only if i_k occurs once.
      bool shrinks = std::count(tup.begin(), tup.end(), tup[k]) == 1;
      const long sign = k % 2 == 0 ? 1 : -1;
      for (std::size_t e = first; e < last; ++e) {
        auto c = to.component(e);
        auto fc = shrinks ? cover.face(c, tup[k]) : c;
        trip.push_back({e, from.first_element(*ft) + table.component_position(fc), sign});
      }
    }
  }
  return IntMatrix::from_triplets(to.size(), from.size(), std::move(trip));
}

IntMatrix cech_involution(const C2Cover& cover, const SupportTable& table, const TupleBasis& basis, int sign) {
  std::vector<IntMatrix::Triplet> trip;
  trip.reserve(basis.size());
  std::vector<C2Cover::Index> image(static_cast<std::size_t>(basis.degree()) + 1);
  for (std::size_t t = 0; t < basis.tuple_count(); ++t) {
    auto tup = basis.tuple(t);
    for (std::size_t k = 0; k < tup.size(); ++k) image[k] = cover.involution(tup[k]);
    auto it = basis.find_tuple(image);
    if (!it) throw Error(ErrorCode::InvolutionFaceMismatch, "involution image of a tuple is missing");
    for (std::size_t e = basis.first_element(t); e < basis.first_element(t + 1); ++e) {
      auto c = cover.component_involution(basis.component(e));
      trip.push_back({basis.first_element(*it) + table.component_position(c), e, sign});
    }
  }
  return IntMatrix::from_triplets(basis.size(), basis.size(), std::move(trip));
}

namespace {

void require_free(const C2Cover& cover) {
  for (C2Cover::Index i = 0; i < cover.index_count(); ++i)
    if (cover.involution(i) == i)
      throw Error(ErrorCode::CoverNotFree, "index " + cover.index_name(i) + " is fixed by the involution");
}

void require_max_degree(int n) {
  if (n < 0) throw Error(ErrorCode::DegreeOutOfRange, "max degree must be nonnegative");
}

void require_degree(int k, int n) {
  if (k < 0 || k > n - 1)
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k) + " needs max degree at least " +
                                                 std::to_string(k + 1) + " (got " + std::to_string(n) + ")");
}

struct FullComplex {
  std::shared_ptr<const SupportTable> table;
  std::vector<TupleBasis> bases;
  IntegerCochainComplex complex;
};

FullComplex build_full(const C2Cover& cover, int n, const CechOptions& options) {
  require_max_degree(n);
  FullComplex out;
  out.table = std::make_shared<const SupportTable>(cover);
  for (int p = 0; p <= n; ++p) out.bases.emplace_back(cover, *out.table, p, options.include_degenerate);
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;
  for (int p = 0; p <= n; ++p) ranks.push_back(out.bases[p].size());
  for (int p = 0; p < n; ++p)
    diffs.push_back(cech_coboundary(cover, *out.table, out.bases[p], out.bases[p + 1], options.include_degenerate));
  out.complex = IntegerCochainComplex(0, std::move(ranks), std::move(diffs));
  return out;
}

}  // namespace

EquivariantComplex build_equivariant_complex(const C2Cover& cover, const CoefficientSystem& coeff, int max_degree,
                                             CechOptions options) {
  coeff.check();
  require_free(cover);
  FullComplex full = build_full(cover, max_degree, options);
  EquivariantComplex out;
  out.max_degree = max_degree;
  out.sign = coeff.sign;
  out.table = full.table;
  for (int p = 0; p <= max_degree; ++p)
    out.involution.push_back(cech_involution(cover, *full.table, full.bases[p], coeff.sign));
  // Checks t^2 = 1 and t d = d t before extracting the fixed part.
  out.fixed = fixed_subcomplex(full.complex, out.involution);
  out.bases = std::move(full.bases);
  out.full = std::move(full.complex);
  return out;
}

GroupDescriptor cohomology_with(const IntegerCochainComplex& c, const CoefficientSystem& coeff, int k) {
  switch (coeff.base) {
    case CoefficientBase::Integers: return complex_cohomology(c, k);
    case CoefficientBase::Rationals: return GroupDescriptor::free(rational_cohomology_dim(c, k));
    case CoefficientBase::IntegersMod: return mod_n_cohomology(c, k, coeff.modulus);
  }
  return {};
}

GroupDescriptor equivariant_cohomology(const C2Cover& cover, const CoefficientSystem& coeff, int k, int max_degree,
                                       CechOptions options) {
  require_degree(k, max_degree);
  auto ec = build_equivariant_complex(cover, coeff, max_degree, options);
  return cohomology_with(ec.complex(), coeff, k);
}

GroupDescriptor nonequivariant_cohomology(const C2Cover& cover, const CoefficientSystem& coeff, int k,
                                          int max_degree, CechOptions options) {
  coeff.check();
  require_degree(k, max_degree);
  auto full = build_full(cover, max_degree, options);
  return cohomology_with(full.complex, coeff, k);
}

CohomologyEngine::CohomologyEngine(std::shared_ptr<const C2Cover> cover, int max_degree, CechOptions options)
    : cover_(std::move(cover)), max_degree_(max_degree), options_(options) {
  require_max_degree(max_degree);
  require_free(*cover_);
}

const EquivariantComplex& CohomologyEngine::complex(int sign) const {
  {
    std::lock_guard lock(mu_);
    auto it = complexes_.find(sign);
    if (it != complexes_.end()) return *it->second;
  }
  auto ec = std::make_shared<const EquivariantComplex>(
      build_equivariant_complex(*cover_, CoefficientSystem::integers(sign), max_degree_, options_));
  std::lock_guard lock(mu_);
  return *complexes_.emplace(sign, std::move(ec)).first->second;
}

void CohomologyEngine::require(int k) const { require_degree(k, max_degree_); }

GroupDescriptor CohomologyEngine::cohomology(const CoefficientSystem& coeff, int k) const {
  coeff.check();
  require(k);
  return cohomology_with(complex(coeff.sign).complex(), coeff, k);
}

std::size_t CohomologyEngine::rational_dim(int sign, int k) const {
  require(k);
  return rational_cohomology_dim(complex(sign).complex(), k);
}

void CoefficientComplex::check() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidCoefficientComplex, m); };
  if (terms.empty()) bad("a coefficient complex needs at least one term");
  if (maps.size() + 1 != terms.size()) bad("expected one map between each pair of consecutive terms");
  for (const auto& t : terms) {
    t.check();
    if (t.base == CoefficientBase::IntegersMod)
      throw Error(ErrorCode::UnsupportedCoefficients, "Z/n terms are not supported in coefficient complexes");
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& a = terms[i];
    const auto& b = terms[i + 1];
    const auto& m = maps[i];
    if (m.kind == CoefficientMap::Kind::Inclusion) {
      if (a.base != CoefficientBase::Integers || b.base != CoefficientBase::Rationals)
        bad("the inclusion map goes from integers to rationals");
      if (m.factor != 1) bad("the inclusion map has factor 1");
    }
    if (m.factor == 0) continue;
    if (a.base == CoefficientBase::Rationals && b.base == CoefficientBase::Integers)
      bad("the only map from rationals to integers is zero");
    if (a.sign != b.sign) bad("map " + std::to_string(i) + " does not commute with the sign actions");
  }
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (maps[i].factor * maps[i + 1].factor != 0)
      bad("maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not compose to zero");
}

std::string CoefficientComplex::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) {
      const auto& m = maps[i - 1];
      s += m.kind == CoefficientMap::Kind::Inclusion ? " --incl--> " : " --x" + m.factor.get_str() + "--> ";
    }
    s += terms[i].to_string();
  }
  return s + "]";
}

IntegerCochainComplex total_complex(const std::vector<TotalTerm>& terms, const std::vector<Integer>& map_factors,
                                    int max_degree, TotalSign convention) {
  require_max_degree(max_degree);
  // offset[k][t]: where term t's Cech degree k - position starts inside total degree k
  std::vector<std::size_t> ranks(max_degree + 1, 0);
  std::vector<std::vector<long>> offset(max_degree + 1, std::vector<long>(terms.size(), -1));
  for (int k = 0; k <= max_degree; ++k)
    for (std::size_t t = 0; t < terms.size(); ++t) {
      int j = k - terms[t].position;
      if (j < 0 || j > max_degree) continue;
      offset[k][t] = static_cast<long>(ranks[k]);
      ranks[k] += terms[t].complex->rank(j);
    }
  std::vector<IntMatrix> diffs;
  for (int k = 0; k < max_degree; ++k) {
    std::vector<IntMatrix::Triplet> trip;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      int j = k - terms[t].position;
      if (offset[k][t] < 0) continue;
      const auto col0 = static_cast<std::size_t>(offset[k][t]);
      // Cech part
      if (offset[k + 1][t] >= 0) {
        const IntMatrix& d = terms[t].complex->differential(j);
        const auto row0 = static_cast<std::size_t>(offset[k + 1][t]);
        for (std::size_t c = 0; c < d.cols(); ++c)
          for (const auto& e : d.column(c)) trip.push_back({row0 + e.row, col0 + c, e.value});
      }
      // coefficient part, to the term one position up
      for (std::size_t u = 0; u < terms.size(); ++u) {
        if (terms[u].position != terms[t].position + 1 || offset[k + 1][u] < 0) continue;
        const Integer& a = map_factors.at(static_cast<std::size_t>(terms[t].position));
        if (a == 0) continue;
        if (terms[u].complex->rank(j) != terms[t].complex->rank(j))
          throw Error(ErrorCode::InvalidCoefficientComplex, "a nonzero coefficient map joins different complexes");
        int exponent = convention == TotalSign::CechDegree ? j : terms[t].position;
        Integer v = exponent % 2 == 0 ? a : Integer(-a);
        const auto row0 = static_cast<std::size_t>(offset[k + 1][u]);
        for (std::size_t r = 0; r < terms[t].complex->rank(j); ++r) trip.push_back({row0 + r, col0 + r, v});
      }
    }
    diffs.push_back(IntMatrix::from_triplets(ranks[k + 1], ranks[k], std::move(trip)));
  }
  return IntegerCochainComplex(0, std::move(ranks), std::move(diffs));
}

ExtendedGroup hypercohomology(const CohomologyEngine& engine, const CoefficientComplex& fstar, int k) {
  fstar.check();
  const int n = engine.max_degree();
  require_degree(k, n);
  std::vector<Integer> factors;
  for (const auto& m : fstar.maps) factors.push_back(m.factor);
  std::vector<TotalTerm> all, rational, integral;
  for (std::size_t i = 0; i < fstar.terms.size(); ++i) {
    TotalTerm t{static_cast<int>(i), &engine.complex(fstar.terms[i].sign).complex()};
    all.push_back(t);
    (fstar.terms[i].base == CoefficientBase::Rationals ? rational : integral).push_back(t);
  }
  IntegerCochainComplex total = total_complex(all, factors, n);
  if (rational.empty()) return ExtendedGroup::from_integral(complex_cohomology(total, k));
  if (integral.empty()) return ExtendedGroup::from_rational_dim(rational_cohomology_dim(total, k));

  // 0 -> V -> T -> F -> 0 with V rational. Over Q the long exact sequence fixes
  // the ranks d_j of the connecting maps H^j(F) -> H^{j+1}(V).
  IntegerCochainComplex v = total_complex(rational, factors, n);
  IntegerCochainComplex f = total_complex(integral, factors, n);
  std::vector<std::size_t> d;
  std::size_t prev = 0;
  GroupDescriptor hf;
  for (int j = 0; j <= k; ++j) {
    std::size_t a = rational_cohomology_dim(v, j);
    hf = complex_cohomology(f, j);
    std::size_t h = rational_cohomology_dim(total, j);
    std::size_t dj = a + hf.rank - prev - h;
    d.push_back(dj);
    if (j == k) return ExtendedGroup{hf.rank - dj, a - prev, prev, hf.torsion};
    prev = dj;
  }
  return {};
}

ExtendedGroup hypercohomology(const C2Cover& cover, const CoefficientComplex& fstar, int k, int max_degree) {
  CohomologyEngine engine(std::make_shared<const C2Cover>(cover), max_degree);
  return hypercohomology(engine, fstar, k);
}

}  // namespace realcech
