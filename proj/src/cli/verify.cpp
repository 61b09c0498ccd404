#include "realcech/cli/verify.hpp"

#include <map>
#include <memory>
#include <random>
#include <stdexcept>

#include "realcech/catalog/catalog.hpp"
#include "realcech/deligne/deligne.hpp"
#include "realcech/exactalg/smith.hpp"

namespace realcech {

namespace {

constexpr int kMaxDegree = 5;  // every suite looks at degrees <= 4

nlohmann::ordered_json group_json(const GroupDescriptor& g) {
  nlohmann::ordered_json t = nlohmann::ordered_json::array();
  for (const auto& x : g.torsion) t.push_back(x.get_str());
  return {{"rank", g.rank}, {"torsion", t}, {"text", g.to_string()}};
}

class Context {
 public:
  explicit Context(const VerifyOptions& o) : options(o) {
    if (options.spaces.empty())
      for (const auto& e : catalog_entries()) options.spaces.push_back(e.name);
  }

  const CohomologyEngine& engine(const std::string& name) {
    auto it = engines_.find(name);
    if (it != engines_.end()) return *it->second;
    auto cover = std::make_shared<const C2Cover>(build_space(name));
    return *engines_.emplace(name, std::make_unique<CohomologyEngine>(cover, kMaxDegree)).first->second;
  }

  void note(const std::string& line) {
    if (options.progress) options.progress(line);
  }

  VerifyOptions options;

 private:
  std::map<std::string, std::unique_ptr<CohomologyEngine>> engines_;
};

class Recorder {
 public:
  Recorder(SuiteResult& r, std::string space) : r_(r), space_(std::move(space)) {}

  void check(bool ok, const std::string& what, nlohmann::ordered_json detail = {}) {
    ++r_.checks;
    if (!ok) r_.failures.push_back({r_.suite, space_, what, std::move(detail)});
  }

 private:
  SuiteResult& r_;
  std::string space_;
};

void snf_suite(Context& ctx, SuiteResult& out) {
  for (const auto& name : ctx.options.spaces) {
    ctx.note("snf " + name);
    Recorder rec(out, name);
    const auto& eng = ctx.engine(name);
    for (int s : {-1, 1}) {
      const auto& c = eng.complex(s).complex();
      for (int k = 0; k < kMaxDegree; ++k) {
        nlohmann::ordered_json where = {{"sign", s}, {"degree", k}};
        auto z = eng.cohomology(CoefficientSystem::integers(s), k);
        auto q = eng.rational_dim(s, k);
        auto w = where;
        w["integral"] = group_json(z);
        w["rational_dim"] = q;
        rec.check(z.rank == q, "rank over Z equals dimension over Q", w);

        const IntMatrix& d = c.differential(k);
        const auto& inv = c.invariants(k);
        std::size_t rr = c.rational_rank_of(k);
        std::size_t rp = rank_mod_prime(d, kPrefilterPrime);
        auto r = where;
        r["smith_rank"] = inv.rank;
        r["rational_rank"] = rr;
        r["mod_p_rank"] = rp;
        rec.check(inv.rank == rr && rp <= rr, "differential ranks agree", r);

        if (d.rows() * d.cols() > 40000 || d.rows() == 0 || d.cols() == 0) continue;
        auto [dd, u, v] = smith_normal_form(d);
        bool diagonal = u * d * v == dd;
        std::vector<Integer> diag;
        for (std::size_t i = 0; i < std::min(dd.rows(), dd.cols()); ++i)
          if (dd.at(i, i) != 0) diag.push_back(abs(dd.at(i, i)));
        bool chain = true;
        for (std::size_t i = 1; i < diag.size(); ++i) chain = chain && diag[i] % diag[i - 1] == 0;
        std::vector<Integer> nontrivial;
        for (const auto& x : diag)
          if (x != 1) nontrivial.push_back(x);
        auto iu = invariant_factors(u), iv = invariant_factors(v);
        bool unimodular = iu.rank == u.rows() && iu.nontrivial.empty() && iv.rank == v.rows() && iv.nontrivial.empty();
        rec.check(diagonal && chain && unimodular && diag.size() == inv.rank && nontrivial == inv.nontrivial,
                  "smith form u d v is diagonal with unimodular transforms", where);
      }
    }
  }
}

void les_suite(Context& ctx, SuiteResult& out) {
  auto fstar = CoefficientComplex{{CoefficientSystem::iZ(), CoefficientSystem::iQ()}, {CoefficientMap::inclusion()}};
  for (const auto& name : ctx.options.spaces) {
    ctx.note("les " + name);
    Recorder rec(out, name);
    const auto& eng = ctx.engine(name);
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; q <= 4; ++q) {
        auto d = deligne_descriptor(eng, p, q);
        auto hq = eng.cohomology(CoefficientSystem::iZ(), q);
        nlohmann::ordered_json where = {{"p", p}, {"q", q}, {"descriptor", to_json(d)}};
        DeligneShape want = p == 0 || q > p ? DeligneShape::Discrete
                            : q == p        ? DeligneShape::Mixed
                                            : DeligneShape::CompactExtension;
        rec.check(d.shape == want, "shape follows the (p, q) case split", where);
        if (d.shape == DeligneShape::Discrete) rec.check(d.group == hq, "discrete group is H^q(iZ)", where);
        if (d.shape == DeligneShape::Mixed)
          rec.check(d.group == hq && d.smooth_part == kSmoothPartSymbol, "mixed quotient is H^q(iZ)", where);
        if (d.shape != DeligneShape::CompactExtension) continue;
        std::size_t rank = q >= 1 ? eng.cohomology(CoefficientSystem::iZ(), q - 1).rank : 0;
        std::size_t dim = q >= 1 ? eng.rational_dim(-1, q - 1) : 0;
        rec.check(d.torus_dim == rank && d.torus_dim == dim, "torus_dim is rank H^(q-1)(iZ) and dim H^(q-1)(iQ-)", where);
        rec.check(d.group == hq.torsion_part(), "torsion is H^q(iZ)_tors", where);
        if (q >= 1) {
          auto h = hypercohomology(eng, fstar, q);
          auto w = where;
          w["total_complex"] = h.to_string();
          rec.check(h.divisible_rank == d.torus_dim && GroupDescriptor{0, h.torsion} == d.group && h.free_rank == 0 &&
                        h.rational_dim == 0,
                    "descriptor matches H^q of [iZ -> iQ-]", w);
        }
      }
  }
}

void refinement_suite(Context& ctx, SuiteResult& out) {
  for (const auto& e : catalog_entries()) {
    if (e.coarse.empty()) continue;
    bool wanted = false;
    for (const auto& s : ctx.options.spaces) wanted = wanted || s == e.name || s == e.coarse;
    if (!wanted) continue;
    ctx.note("refinement " + e.coarse + " / " + e.name);
    Recorder rec(out, e.coarse + " / " + e.name);
    const auto& coarse = ctx.engine(e.coarse);
    const auto& fine = ctx.engine(e.name);
    for (auto coeff : {CoefficientSystem::iZ(), CoefficientSystem::integers(1), CoefficientSystem::iQ(),
                       CoefficientSystem::integers_mod(2, -1)})
      for (int k = 0; k < kMaxDegree; ++k) {
        auto a = coarse.cohomology(coeff, k), b = fine.cohomology(coeff, k);
        rec.check(a == b, "coarse and fine covers agree",
                  {{"coefficients", coeff.to_string()}, {"degree", k}, {"coarse", group_json(a)}, {"fine", group_json(b)}});
      }
  }
}

void bockstein_suite(Context& ctx, SuiteResult& out) {
  auto fstar = CoefficientComplex{{CoefficientSystem::iZ(), CoefficientSystem::iQ()}, {CoefficientMap::inclusion()}};
  for (const auto& name : ctx.options.spaces) {
    ctx.note("bockstein " + name);
    Recorder rec(out, name);
    const auto& eng = ctx.engine(name);
    for (int k = 0; k <= 3; ++k) {
      auto qc = quotient_coefficients_cohomology(eng, k);
      auto h = hypercohomology(eng, fstar, k + 1);
      rec.check(GroupDescriptor{0, h.torsion} == qc.torsion && h.divisible_rank == qc.torus_dim,
                "Bockstein assembly matches the total complex",
                {{"k", k}, {"assembly_torsion", group_json(qc.torsion)}, {"torus_dim", qc.torus_dim},
                 {"total_complex", h.to_string()}});
    }

    FlatClassifier fcl(eng);
    const auto& ec = eng.complex(-1);
    std::mt19937_64 rng(ctx.options.seed);
    std::uniform_int_distribution<long> shift(-3, 3), num(-30, 30), den(1, 12);
    for (int trial = 0; trial < ctx.options.samples; ++trial) {
      nlohmann::ordered_json where = {{"seed", ctx.options.seed}, {"trial", trial}};
      FlatClass want;
      FlatCocycle fc = fcl.random_cocycle(rng, &want);
      rec.check(flat_cocycle_violations(fc).empty(), "random cocycle is valid", where);
      FlatClass got = fcl.classify(fc);
      rec.check(got == want, "class matches the construction", where);
      rec.check(got.trivial == (is_zero_vector(got.torus) && got.bockstein.is_zero()), "trivial iff coordinates vanish",
                where);
      auto b = fcl.bockstein(fc);
      rec.check(is_zero_vector(ec.full.differential(2).apply(b.cocycle)) && ec.involution[2].apply(b.cocycle) == b.cocycle,
                "Bockstein is an equivariant integral cocycle", where);
      std::vector<Integer> shifts(fc.angles.size());
      for (auto& s : shifts) s = shift(rng);
      rec.check(fcl.bockstein(fc, shifts).coordinates == b.coordinates, "Bockstein class is independent of the lift",
                where);
      std::vector<Rational> a(zero_cochain_orbits(fcl.cover()));
      for (auto& x : a) x = ratio(num(rng), den(rng));
      FlatCocycle cob = flat_coboundary(eng.cover_ptr(), a);
      rec.check(fcl.classify(cob).trivial, "coboundaries are trivial", where);
      FlatCocycle moved = fc;
      for (std::size_t s = 0; s < moved.angles.size(); ++s) moved.angles[s] += cob.angles[s];
      rec.check(fcl.equivalent(fc, moved), "adding a coboundary keeps the class", where);
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"snf", "les", "refinement", "bockstein"};
  return names;
}

std::vector<SuiteResult> run_suites(const std::string& suite, const VerifyOptions& options) {
  std::vector<std::string> todo;
  if (suite == "all")
    todo = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end())
    todo = {suite};
  else
    throw std::invalid_argument("unknown suite '" + suite + "'");
  Context ctx(options);
  std::vector<SuiteResult> out;
  for (const auto& s : todo) {
    SuiteResult r;
    r.suite = s;
    if (s == "snf") snf_suite(ctx, r);
    if (s == "les") les_suite(ctx, r);
    if (s == "refinement") refinement_suite(ctx, r);
    if (s == "bockstein") bockstein_suite(ctx, r);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json to_json(const VerifyFailure& f) {
  return {{"suite", f.suite}, {"space", f.space}, {"check", f.check}, {"detail", f.detail}};
}

nlohmann::ordered_json to_json(const SuiteResult& r) {
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return {{"suite", r.suite}, {"checks", r.checks}, {"passed", r.passed()}, {"failures", failures}};
}

}  // namespace realcech
