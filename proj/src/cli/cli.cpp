#include "realcech/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>

#include "realcech/catalog/catalog.hpp"
#include "realcech/cechengine/engine.hpp"
#include "realcech/cli/verify.hpp"
#include "realcech/coverdata/cover_json.hpp"
#include "realcech/deligne/deligne.hpp"
#include "realcech/errors.hpp"
#include "realcech/version.hpp"

namespace realcech {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json torsion_json(const std::vector<Integer>& t) {
  json a = json::array();
  for (const auto& x : t) a.push_back(integer_json(x));
  return a;
}

// One result: the record for --json and the same content as a line of text.
struct Result {
  json record;
  std::string text;
};

class Report {
 public:
  explicit Report(std::vector<std::string> invocation) : invocation_(std::move(invocation)) {}

  void set_cover(const C2Cover& c) {
    cover_ = json{{"name", c.name()},
                  {"index_count", c.index_count()},
                  {"component_count", c.component_count()},
                  {"good", c.good()},
                  {"compact", c.compact()}};
  }
  void add(Result r) { results_.push_back(std::move(r)); }
  // Starts timing a stage; the previous stage ends here.
  void stage(const std::string& name) {
    close_stage();
    current_ = name;
    start_ = Clock::now();
  }

  void print(std::ostream& out, bool as_json) {
    close_stage();
    if (!as_json) {
      for (const auto& r : results_) out << r.text << '\n';
      return;
    }
    json j;
    j["invocation"] = invocation_;
    j["engine_version"] = kEngineVersion;
    j["cover"] = cover_.is_null() ? json() : cover_;
    j["results"] = json::array();
    for (const auto& r : results_) j["results"].push_back(r.record);
    j["timing_ms"] = timing_;
    out << j.dump(2) << '\n';
  }

 private:
  void close_stage() {
    if (current_.empty()) return;
    timing_[current_] = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    current_.clear();
  }

  std::vector<std::string> invocation_;
  json cover_;
  std::vector<Result> results_;
  json timing_ = json::object();
  std::string current_;
  Clock::time_point start_;
};

struct SpaceFlags {
  std::string space;
  bool double_fixed = false;
};

void add_space_flags(CLI::App* cmd, SpaceFlags& f) {
  cmd->add_option("--space", f.space, "catalog name, or @path to a cover file")->required();
  cmd->add_flag("--double-fixed", f.double_fixed, "double fixed indices of a cover file before validation");
}

std::shared_ptr<const C2Cover> load_space(const SpaceFlags& f) {
  if (!f.space.empty() && f.space.front() == '@') {
    CoverDescription d = read_cover_file(f.space.substr(1));
    return std::make_shared<const C2Cover>(f.double_fixed ? double_fixed_indices(d) : validate_cover(d));
  }
  return std::make_shared<const C2Cover>(build_space(f.space));
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "iZ,incl,iQ-" or "Z,x3,Z": terms and maps alternate.
CoefficientComplex parse_complex(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t at = 0;
  while (true) {
    std::size_t comma = text.find(',', at);
    parts.push_back(text.substr(at, comma - at));
    if (comma == std::string::npos) break;
    at = comma + 1;
  }
  if (parts.size() % 2 == 0) throw UsageError("--complex needs terms and maps alternating, e.g. iZ,incl,iQ-");
  CoefficientComplex c;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (i % 2 == 0) {
      c.terms.push_back(CoefficientSystem::parse(p));
    } else if (p == "incl") {
      c.maps.push_back(CoefficientMap::inclusion());
    } else if (p.size() > 1 && p[0] == 'x') {
      Integer a;
      if (a.set_str(p.substr(1), 10) != 0) throw UsageError("bad map '" + p + "'");
      c.maps.push_back(CoefficientMap::multiply(a));
    } else {
      throw UsageError("bad map '" + p + "' (use incl or xN)");
    }
  }
  c.check();
  return c;
}

// Records follow the Deligne result-record layout; plain cohomology has p = null
// and shape "discrete". Extra keys come after the common ones.
json schema_record(const C2Cover& cover, int q, int max_degree) {
  return json{{"space", cover.name()}, {"p", nullptr}, {"q", q}, {"shape", "discrete"}, {"rank", 0},
              {"torsion", json::array()}, {"torus_dim", 0}, {"smooth_part_symbolic", false},
              {"degrees_computed", {0, max_degree - 1}}, {"good_cover_asserted", cover.good()}};
}

Result group_result(const std::string& label, json record, const json& extra, const GroupDescriptor& g) {
  record["rank"] = g.rank;
  record["torsion"] = torsion_json(g.torsion);
  for (const auto& [key, value] : extra.items()) record[key] = value;
  record["text"] = g.to_string();
  return {std::move(record), label + " = " + g.to_string()};
}

Result descriptor_result(const std::string& label, const DeligneDescriptor& d) {
  return {to_json(d), label + " = " + d.to_string()};
}

struct ComputeFlags {
  SpaceFlags space;
  std::string coeff = "iZ";
  std::optional<int> degree;
  std::optional<int> max_degree;
  bool nonequivariant = false;
  std::string complex;
};

void cmd_compute(const ComputeFlags& f, Report& report) {
  if (!f.degree && !f.max_degree) throw UsageError("compute needs --degree or --max-degree");
  if (!f.complex.empty() && f.nonequivariant) throw UsageError("--complex is equivariant only");
  const int n = f.max_degree ? *f.max_degree : *f.degree + 1;
  std::vector<int> degrees;
  if (f.degree)
    degrees = {*f.degree};
  else
    for (int k = 0; k < n; ++k) degrees.push_back(k);

  std::optional<CoefficientComplex> fstar;
  std::optional<CoefficientSystem> coeff;
  if (!f.complex.empty())
    fstar = parse_complex(f.complex);
  else
    coeff = CoefficientSystem::parse(f.coeff);

  report.stage("build_cover");
  auto cover = load_space(f.space);
  report.set_cover(*cover);

  if (f.nonequivariant) {
    report.stage("compute");
    for (int k : degrees) {
      auto g = nonequivariant_cohomology(*cover, *coeff, k, n);
      json extra{{"kind", "cohomology"}, {"coefficients", coeff->to_string()}, {"equivariant", false}};
      report.add(group_result("H^" + std::to_string(k) + "(" + cover->name() + "; " + coeff->to_string() +
                                  ", nonequivariant)",
                              schema_record(*cover, k, n), extra, g));
    }
    return;
  }

  report.stage("build_complex");
  CohomologyEngine engine(cover, n);
  report.stage("compute");
  for (int k : degrees) {
    if (fstar) {
      auto h = hypercohomology(engine, *fstar, k);
      json r = schema_record(*cover, k, n);
      r["rank"] = h.free_rank;
      r["torsion"] = torsion_json(h.torsion);
      r["kind"] = "hypercohomology";
      r["complex"] = fstar->to_string();
      r["rational_dim"] = h.rational_dim;
      r["divisible_rank"] = h.divisible_rank;
      r["text"] = h.to_string();
      report.add({std::move(r), "H^" + std::to_string(k) + "(" + cover->name() + "; " + fstar->to_string() +
                                    ") = " + h.to_string()});
    } else {
      auto g = engine.cohomology(*coeff, k);
      json extra{{"kind", "cohomology"}, {"coefficients", coeff->to_string()}, {"equivariant", true}};
      report.add(group_result("H^" + std::to_string(k) + "(" + cover->name() + "; " + coeff->to_string() + ")",
                              schema_record(*cover, k, n), extra, g));
    }
  }
}

struct DeligneFlags {
  SpaceFlags space;
  int p = 0;
  int q = 0;
  std::optional<int> max_degree;
};

void cmd_deligne(const DeligneFlags& f, Report& report) {
  report.stage("build_cover");
  auto cover = load_space(f.space);
  report.set_cover(*cover);
  report.stage("build_complex");
  CohomologyEngine engine(cover, f.max_degree ? *f.max_degree : f.q + 1);
  report.stage("compute");
  auto d = deligne_descriptor(engine, f.p, f.q);
  report.add(descriptor_result(
      "H^" + std::to_string(f.q) + "(" + cover->name() + "; Z(" + std::to_string(f.p) + "))", d));
}

struct ClassifyFlags {
  SpaceFlags space;
  std::string what;
};

void cmd_classify(const ClassifyFlags& f, Report& report) {
  report.stage("build_cover");
  auto cover = load_space(f.space);
  report.set_cover(*cover);
  report.stage("compute");
  const std::string label = f.what + "(" + cover->name() + ")";
  json extra{{"what", f.what}};
  if (f.what == "line-bundles") {
    report.add(group_result(label, schema_record(*cover, 2, 3), extra, classify_line_bundles(*cover)));
  } else if (f.what == "with-connection") {
    report.add(descriptor_result(label, classify_line_bundles_with_connection(*cover)));
  } else if (f.what == "flat") {
    report.add(descriptor_result(label, classify_flat_line_bundles(*cover)));
  } else if (f.what == "circle-maps") {
    report.add(group_result(label, schema_record(*cover, 1, 2), extra, real_circle_maps(*cover)));
  } else {
    throw UsageError("unknown --what '" + f.what + "'");
  }
}

struct VerifyFlags {
  std::string suite = "all";
  std::vector<std::string> spaces;
  int samples = 100;
  std::uint64_t seed = 1;
  bool progress = false;
};

bool cmd_verify(const VerifyFlags& f, Report& report, std::ostream& err) {
  VerifyOptions o;
  o.spaces = f.spaces;
  o.samples = f.samples;
  o.seed = f.seed;
  if (f.progress) o.progress = [&err](const std::string& line) { err << line << std::endl; };
  report.stage("verify");
  bool ok = true;
  for (const auto& r : run_suites(f.suite, o)) {
    std::string text = r.suite + ": " + (r.passed() ? "pass" : "FAIL") + " (" + std::to_string(r.checks) +
                       " checks, " + std::to_string(r.failures.size()) + " failed)";
    for (const auto& fail : r.failures) text += "\n  " + to_json(fail).dump();
    ok = ok && r.passed();
    report.add({to_json(r), text});
  }
  return ok;
}

struct ExportFlags {
  SpaceFlags space;
  std::string out;
};

void cmd_export(const ExportFlags& f, Report& report) {
  report.stage("build_cover");
  auto cover = load_space(f.space);
  report.set_cover(*cover);
  std::string text = cover_to_json(*cover);
  if (f.out.empty()) {
    report.add({json::parse(text), text.substr(0, text.size() - 1)});
    return;
  }
  write_cover_file(f.out, *cover);
  report.add({json{{"written", f.out}, {"space", cover->name()}}, "wrote " + f.out});
}

void cmd_list(Report& report) {
  for (const auto& name : all_space_names()) {
    CatalogEntry e = catalog_entry(name);
    bool swept = false;
    for (const auto& c : catalog_entries()) swept = swept || c.name == e.name;
    json r{{"name", e.name}, {"construction", e.construction}, {"compact", e.compact},
           {"free_action", e.free_action}, {"connected", e.connected}, {"swept", swept}};
    if (!e.coarse.empty()) r["refines"] = e.coarse;
    std::string text = e.name + "  " + e.construction;
    if (!e.coarse.empty()) text += " (refines " + e.coarse + ")";
    if (!swept) text += " [not in default sweeps]";
    report.add({std::move(r), text});
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeOutOfRange:
    case ErrorCode::InsufficientDegree:
      return kExitDegree;
    case ErrorCode::NotCompact:
      return kExitNotCompact;
    case ErrorCode::MalformedDescription:
    case ErrorCode::InvolutionNotSelfInverse:
    case ErrorCode::FixedIndexPresent:
    case ErrorCode::FaceIncoherence:
    case ErrorCode::InvolutionFaceMismatch:
    case ErrorCode::NotDownwardClosed:
    case ErrorCode::CoverNotFree:
    case ErrorCode::InvalidCoefficientComplex:
    case ErrorCode::UnsupportedCoefficients:
    case ErrorCode::UnknownSpace:
    case ErrorCode::UnsupportedDimension:
      return kExitInvalid;
    default:
      return kExitFailure;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant Cech and Real Deligne cohomology of C2-covers", "realcech"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "print a JSON run report");

  ComputeFlags compute;
  auto* c = app.add_subcommand("compute", "equivariant cohomology or hypercohomology");
  add_space_flags(c, compute.space);
  c->add_option("--coeff", compute.coeff, "iZ, Z, iQ-, Q, Zmod:n or Zmod+:n");
  c->add_option("--degree", compute.degree, "single degree k");
  c->add_option("--max-degree", compute.max_degree, "complex depth N; without --degree prints degrees 0..N-1")
      ->check(CLI::PositiveNumber);
  c->add_flag("--nonequivariant", compute.nonequivariant, "ordinary cohomology of the nerve");
  c->add_option("--complex", compute.complex, "coefficient complex, e.g. iZ,incl,iQ- or Z,x3,Z")
      ->excludes(c->get_option("--coeff"));
  c->add_flag("--json", as_json);

  DeligneFlags deligne;
  auto* d = app.add_subcommand("deligne", "Real Deligne cohomology H^q(Z(p))");
  add_space_flags(d, deligne.space);
  d->add_option("-p", deligne.p)->required()->check(CLI::NonNegativeNumber);
  d->add_option("-q", deligne.q)->required()->check(CLI::NonNegativeNumber);
  d->add_option("--max-degree", deligne.max_degree, "complex depth, default q + 1")->check(CLI::PositiveNumber);
  d->add_flag("--json", as_json);

  ClassifyFlags classify;
  auto* k = app.add_subcommand("classify", "classification queries");
  add_space_flags(k, classify.space);
  k->add_option("--what", classify.what)
      ->required()
      ->check(CLI::IsMember({"line-bundles", "with-connection", "flat", "circle-maps"}));
  k->add_flag("--json", as_json);

  VerifyFlags verify;
  auto* v = app.add_subcommand("verify", "run consistency suites over the catalog");
  v->add_option("--suite", verify.suite)->check(CLI::IsMember({"snf", "les", "refinement", "bockstein", "all"}));
  v->add_option("--space", verify.spaces, "restrict to these catalog spaces");
  v->add_option("--samples", verify.samples, "random flat cocycles per space")->check(CLI::NonNegativeNumber);
  v->add_option("--seed", verify.seed);
  v->add_flag("--progress", verify.progress, "report progress on stderr");
  v->add_flag("--json", as_json);

  ExportFlags exp;
  auto* e = app.add_subcommand("export", "write a cover file");
  add_space_flags(e, exp.space);
  e->add_option("--out", exp.out, "output path; stdout if omitted");
  e->add_flag("--json", as_json);

  auto* l = app.add_subcommand("list", "list catalog spaces");
  l->add_flag("--json", as_json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  std::vector<std::string> invocation{"realcech"};
  invocation.insert(invocation.end(), args.begin(), args.end());
  Report report(invocation);
  try {
    int code = kExitOk;
    if (c->parsed()) cmd_compute(compute, report);
    if (d->parsed()) cmd_deligne(deligne, report);
    if (k->parsed()) cmd_classify(classify, report);
    if (v->parsed() && !cmd_verify(verify, report, err)) code = kExitFailure;
    if (e->parsed()) cmd_export(exp, report);
    if (l->parsed()) cmd_list(report);
    report.print(out, as_json);
    return code;
  } catch (const ValidationError& ve) {
    err << "cover validation failed:\n";
    for (const auto& x : ve.violations()) err << "  " << to_string(x.code) << ": " << x.message << '\n';
    return kExitInvalid;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex.code());
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace realcech
