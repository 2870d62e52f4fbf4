#include "toriclift/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "toriclift/divisors.hpp"
#include "toriclift/errors.hpp"
#include "toriclift/fan_io.hpp"
#include "toriclift/iso.hpp"
#include "toriclift/lifting.hpp"
#include "toriclift/presentation.hpp"

#ifndef TORICLIFT_VERSION
#define TORICLIFT_VERSION "0.0.0"
#endif

namespace toriclift {

std::string tool_version() { return TORICLIFT_VERSION; }

namespace {

using Json = nlohmann::ordered_json;

Json jint(const Integer& x) { return x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()); }

Json jvec(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

Json jmat(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
  return a;
}

Json jgroup(const FgAbGroup& g) {
  return Json{{"text", g.to_string()}, {"free_rank", g.free_rank()}, {"torsion", jvec(g.torsion())}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string index_list(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& path, const std::string& digest) {
    inputs_.push_back({path, digest});
  }
  void line(const std::string& text) { lines_.push_back(text); }
  void field(const std::string& key, const std::string& value) { lines_.push_back(key + ": " + value); }
  Json& result() { return result_; }

  void emit(std::ostream& out, bool json) const {
    if (json) {
      Json j;
      j["report"] = "toriclift";
      j["report_version"] = 1;
      j["tool_version"] = tool_version();
      j["command"] = command_;
      j["inputs"] = Json::array();
      for (const auto& [p, d] : inputs_) j["inputs"].push_back(Json{{"path", p}, {"sha256", d}});
      j["result"] = result_;
      out << j.dump(2) << "\n";
      return;
    }
    out << "toriclift report v1\n";
    out << "tool: toriclift " << tool_version() << "\n";
    out << "command: " << command_ << "\n";
    for (const auto& [p, d] : inputs_) out << "input: " << p << " sha256=" << d << "\n";
    for (const auto& l : lines_) out << l << "\n";
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> lines_;
  Json result_ = Json::object();
};

struct Settings {
  std::string format = "text";
  std::size_t max_rays = FanLimits{}.max_rays;
  std::size_t search_bound = 0;
  bool force_checks = false;
};

FanDocument load(const std::string& path, const Settings& s, Report& report) {
  FanDocument doc = parse_fan_file(path, FanLimits{s.max_rays});
  report.input(path, doc.digest);
  return doc;
}

DivisorSubgroup resolve_subgroup(const FanDocument& doc, const std::string& name) {
  if (const auto* s = doc.subgroup(name)) return DivisorSubgroup::create(doc.fan, s->basis);
  if (name == "cox") return DivisorSubgroup::cox(doc.fan);
  if (name == "kajiwara") return cartier_subgroup(DivisorSubgroup::cox(doc.fan));
  if (name == "principal") return DivisorSubgroup::principal(doc.fan);
  throw InputError("unknown subgroup '" + name + "'; define it in the fan file or use cox, kajiwara or principal");
}

void fan_summary(const Fan& fan, Report& r) {
  r.field("rank", std::to_string(fan.rank()));
  r.field("rays", std::to_string(fan.num_rays()));
  r.field("maximal cones", std::to_string(fan.max_cones().size()));
  r.result()["rank"] = fan.rank();
  r.result()["rays"] = Json::array();
  for (const auto& v : fan.rays()) r.result()["rays"].push_back(jvec(v));
  r.result()["cones"] = fan.max_cones();
}

int cmd_validate(const std::string& path, const Settings& s, Report& r) {
  FanDocument doc = load(path, s, r);
  r.field("valid", "yes");
  r.result()["valid"] = true;
  fan_summary(doc.fan, r);
  for (const auto& sg : doc.subgroups) {
    DivisorSubgroup::create(doc.fan, sg.basis);
    r.field("subgroup " + sg.name, "valid, rank " + std::to_string(sg.basis.rows()));
  }
  r.result()["subgroups"] = Json::array();
  for (const auto& sg : doc.subgroups) r.result()["subgroups"].push_back(sg.name);
  return 0;
}

int cmd_invariants(const std::string& path, const Settings& s, Report& r) {
  FanDocument doc = load(path, s, r);
  const TorusFactorSplit split = split_torus_factor(doc.fan);
  const Fan& reduced = split.reduced_fan;
  const FgAbGroup cl = class_group(reduced).group();
  const SmoothnessProfile prof = smoothness_profile(doc.fan);
  r.line("class group: " + cl.to_string() + "; simplicial: " + yes_no(prof.simplicial) + "; smooth: " +
         yes_no(prof.smooth));
  r.field("degenerate", yes_no(split.torus_rank > 0));
  r.field("torus factor rank", std::to_string(split.torus_rank));
  std::vector<std::string> mult;
  for (const auto& p : prof.cones) mult.push_back(p.simplicial ? p.multiplicity.get_str() : "-");
  std::string m;
  for (std::size_t i = 0; i < mult.size(); ++i) m += (i ? " " : "") + mult[i];
  r.field("cone multiplicities", m.empty() ? "none" : m);
  Json& j = r.result();
  j["class_group"] = jgroup(cl);
  j["simplicial"] = prof.simplicial;
  j["smooth"] = prof.smooth;
  j["torus_rank"] = split.torus_rank;
  j["cone_multiplicities"] = Json::array();
  for (const auto& p : prof.cones) j["cone_multiplicities"].push_back(p.simplicial ? jint(p.multiplicity) : Json());
  return 0;
}

Json presentation_json(const Presentation& p, const std::string& digest) {
  Json j;
  j["format"] = "toriclift-presentation";
  j["version"] = 1;
  j["fan_sha256"] = digest;
  j["mode"] = mode_name(p.mode);
  j["subgroup_basis"] = jmat(p.subgroup.basis());
  j["grading_group"] = jgroup(p.grading_group());
  j["coordinates"] = Json::array();
  for (std::size_t i = 0; i < p.coordinates.size(); ++i)
    j["coordinates"].push_back(Json{{"divisor", jvec(p.coordinates[i].coefficients)}, {"degree", jvec(p.degrees[i])}});
  j["exceptional"] = Json::array();
  for (const auto& e : p.exceptional) j["exceptional"].push_back(e.coordinates);
  return j;
}

int cmd_present(const std::string& path, const std::vector<std::string>& mode, const std::string& out_file,
                const Settings& s, Report& r) {
  FanDocument doc = load(path, s, r);
  std::optional<Presentation> p;
  if (mode.size() == 1 && mode[0] == "cox") {
    p = build_presentation(doc.fan, PresentationMode::Cox);
  } else if (mode.size() == 1 && mode[0] == "kajiwara") {
    p = build_presentation(doc.fan, PresentationMode::Kajiwara);
  } else if (mode.size() == 2 && mode[0] == "subgroup") {
    p = build_presentation(resolve_subgroup(doc, mode[1]));
  } else {
    throw InputError("--mode expects 'cox', 'kajiwara' or 'subgroup NAME'");
  }
  r.field("mode", mode.size() == 2 ? "subgroup " + mode[1] : mode[0]);
  r.field("subgroup basis", p->subgroup.basis().to_string());
  r.field("grading group", p->grading_group().to_string());
  r.field("coordinates", std::to_string(p->coordinates.size()));
  for (std::size_t i = 0; i < p->coordinates.size(); ++i)
    r.line("  T" + std::to_string(i) + ": divisor " + to_string(p->coordinates[i].coefficients) + ", degree " +
           to_string(p->degrees[i]));
  if (p->exceptional.empty()) {
    r.field("exceptional collections", "none");
  } else {
    r.field("exceptional collections", std::to_string(p->exceptional.size()));
    for (const auto& e : p->exceptional) r.line("  {" + index_list(e.coordinates) + "}");
  }
  Json doc_json = presentation_json(*p, doc.digest);
  r.result() = doc_json;
  if (!out_file.empty()) {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw InputError("cannot write " + out_file);
    f << doc_json.dump(2) << "\n";
    r.field("written", out_file);
  }
  return 0;
}

int cmd_lift(const std::string& src_path, const std::string& dst_path, const std::string& matrix_text,
             const std::string& morphism, const std::string& src_sub, const std::string& dst_sub, const Settings& s,
             Report& r) {
  FanDocument src = load(src_path, s, r);
  FanDocument dst = load(dst_path, s, r);
  IntMatrix matrix;
  if (!morphism.empty()) {
    const auto* m = src.morphism(morphism);
    if (!m) throw InputError("source file defines no morphism '" + morphism + "'");
    // The declared target is relative to the source file.
    namespace fs = std::filesystem;
    const fs::path declared = fs::path(src_path).parent_path() / m->target;
    std::error_code ec;
    if (!fs::equivalent(declared, dst_path, ec))
      throw InputError("morphism '" + morphism + "' targets " + m->target + ", not " + dst_path);
    if (m->matrix.rows() != dst.fan.rank() || m->matrix.cols() != src.fan.rank())
      throw InputError("morphism '" + morphism + "' has the wrong shape for these fans");
    matrix = m->matrix;
  } else {
    auto entries = parse_integer_list(matrix_text);
    if (!entries) throw InputError("--matrix expects comma-separated integers, row-major");
    const std::size_t rows = dst.fan.rank(), cols = src.fan.rank();
    if (entries->size() != rows * cols)
      throw InputError("--matrix has " + std::to_string(entries->size()) + " entries; a " + std::to_string(rows) +
                       "x" + std::to_string(cols) + " matrix (target rank x source rank) needs " +
                       std::to_string(rows * cols));
    matrix = IntMatrix(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) matrix(i, j) = (*entries)[i * cols + j];
  }
  const ToricMorphism f = validate_toric_morphism(src.fan, dst.fan, matrix);
  const DivisorSubgroup target_subgroup = resolve_subgroup(dst, dst_sub);
  const DivisorSubgroup source_subgroup = resolve_subgroup(src, src_sub);
  LiftingOptions options;
  options.search_bound = s.search_bound;
  options.force_geometric_checks = s.force_checks;
  const LiftingReport rep = solve_geometric_pullback(f, target_subgroup, source_subgroup, options);

  const std::string exists = rep.verdict == LiftingVerdict::Exists         ? "true"
                             : rep.verdict == LiftingVerdict::DoesNotExist ? "false"
                                                                           : "undecided";
  r.field("matrix", matrix.to_string());
  r.field("target subgroup", dst_sub + " " + target_subgroup.basis().to_string());
  r.field("source subgroup", src_sub + " " + source_subgroup.basis().to_string());
  r.field("exists", exists);
  r.field("cartier subgroup", rep.cartier_basis.to_string());
  r.field("forced pullbacks", rep.forced_values.to_string());
  Json& j = r.result();
  j["exists"] = rep.verdict == LiftingVerdict::Exists ? Json(true)
                : rep.verdict == LiftingVerdict::DoesNotExist ? Json(false)
                                                              : Json("undecided");
  j["verdict"] = verdict_name(rep.verdict);
  j["matrix"] = jmat(matrix);
  j["cartier_basis"] = jmat(rep.cartier_basis);
  j["forced_values"] = jmat(rep.forced_values);
  j["obstructions"] = Json::array();
  for (const auto& o : rep.obstructions) {
    r.line("obstruction (" + o.kind + "): " + o.message);
    Json oj{{"kind", o.kind}, {"message", o.message}, {"multiplier", jint(o.multiplier)}, {"forced_value", jvec(o.forced_value)}};
    oj["basis_index"] = o.basis_index ? Json(*o.basis_index) : Json();
    j["obstructions"].push_back(oj);
  }
  if (rep.witness) {
    r.field("phi", rep.witness->phi.to_string());
    r.field("unique", yes_no(rep.unique));
    r.field("induced grading map", rep.induced_grading_hom->matrix().to_string() + " : " +
                                       rep.induced_grading_hom->domain().to_string() + " -> " +
                                       rep.induced_grading_hom->codomain().to_string());
    j["phi"] = jmat(rep.witness->phi);
    j["decomposition"] = Json::array();
    for (const auto& d : rep.witness->decomposition)
      j["decomposition"].push_back(Json{{"divisor", jvec(d.divisor.coefficients)}, {"character", jvec(d.character)}});
    j["solution_lattice"] = Json::array();
    for (const auto& d : rep.witness->solution_lattice) j["solution_lattice"].push_back(jmat(d));
    j["unique"] = rep.unique;
    j["witness_classes"] = Json::array();
    for (const auto& w : rep.witness_classes) j["witness_classes"].push_back(jmat(w));
    j["induced_grading_hom"] = Json{{"domain", jgroup(rep.induced_grading_hom->domain())},
                                    {"codomain", jgroup(rep.induced_grading_hom->codomain())},
                                    {"matrix", jmat(rep.induced_grading_hom->matrix())}};
  }
  const bool reached = rep.verdict != LiftingVerdict::DoesNotExist || rep.obstructions.empty() ||
                       rep.obstructions.front().kind == "effectivity" || rep.obstructions.front().kind == "support";
  r.field("geometric checks", rep.geometric_checks_skipped ? "skipped (simplicial target)"
                              : reached                    ? "performed"
                                                           : "not reached");
  j["geometric_checks_skipped"] = rep.geometric_checks_skipped;
  j["search_bound"] = rep.search_bound;
  r.line("classification:");
  j["classification"] = Json::array();
  for (const auto& l : classify_liftings(f, rep)) {
    r.line("  " + l);
    j["classification"].push_back(l);
  }
  j["notes"] = rep.notes;
  for (const auto& n : rep.notes) r.field("note", n);
  return rep.verdict == LiftingVerdict::Undecided ? 2 : 0;
}

int cmd_iso(const std::string& a_path, const std::string& b_path, const Settings& s, Report& r) {
  FanDocument a = load(a_path, s, r);
  FanDocument b = load(b_path, s, r);
  const IsoReport rep = toric_isomorphism(a.fan, b.fan);
  r.line(rep.isomorphic ? "isomorphic" : "not isomorphic");
  r.field("torus factor ranks", std::to_string(rep.split_a.torus_rank) + ", " + std::to_string(rep.split_b.torus_rank));
  r.field("reason", rep.reason);
  Json& j = r.result();
  j["isomorphic"] = rep.isomorphic;
  j["torus_ranks"] = {rep.split_a.torus_rank, rep.split_b.torus_rank};
  j["reason"] = rep.reason;
  if (rep.isomorphic) {
    r.field("matrix", rep.full_matrix->to_string());
    r.field("ray bijection", index_list(rep.reduced_iso->ray_bijection));
    r.field("cone bijection", index_list(rep.reduced_iso->cone_bijection));
    j["matrix"] = jmat(*rep.full_matrix);
    j["ray_bijection"] = rep.reduced_iso->ray_bijection;
    j["cone_bijection"] = rep.reduced_iso->cone_bijection;
  }
  return 0;
}

int cmd_split(const std::string& path, const Settings& s, Report& r) {
  FanDocument doc = load(path, s, r);
  const TorusFactorSplit split = split_torus_factor(doc.fan);
  r.field("torus factor rank", std::to_string(split.torus_rank));
  r.field("change of basis", split.change_of_basis.to_string());
  r.line("reduced fan:");
  std::istringstream text(write_fan_text(split.reduced_fan));
  for (std::string l; std::getline(text, l);) r.line("  " + l);
  Json& j = r.result();
  j["torus_rank"] = split.torus_rank;
  j["change_of_basis"] = jmat(split.change_of_basis);
  j["reduced_fan"] = Json::parse(write_fan_json(split.reduced_fan));
  return 0;
}

void print_issues(std::ostream& err, const std::string& what, const std::vector<std::string>& issues) {
  err << "error: " << what << "\n";
  for (const auto& i : issues) err << "  - " << i << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cox and Kajiwara quotient presentations, lifting of toric morphisms, fan isomorphism", "toriclift"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-rays", s.max_rays, "Reject fans with more rays than this")->capture_default_str();
  app.set_version_flag("--version", "toriclift " + tool_version());

  std::string file_a, file_b, out_file, matrix, morphism, src_sub = "cox", dst_sub = "cox";
  std::vector<std::string> mode;
  auto* validate = app.add_subcommand("validate", "Check a fan file");
  validate->add_option("file", file_a)->required();
  auto* invariants = app.add_subcommand("invariants", "Class group, smoothness and degeneracy");
  invariants->add_option("file", file_a)->required();
  auto* present = app.add_subcommand("present", "Quotient presentation data");
  present->add_option("file", file_a)->required();
  present->add_option("--mode", mode, "cox | kajiwara | subgroup NAME")->expected(1, 2)->required();
  present->add_option("--out", out_file, "Write the presentation document (JSON) here");
  auto* lift = app.add_subcommand("lift", "Decide whether a toric morphism lifts to the presentations");
  lift->add_option("source", file_a)->required();
  lift->add_option("target", file_b)->required();
  auto* mopt = lift->add_option("--matrix", matrix, "Row-major target rank x source rank integers");
  lift->add_option("--morphism", morphism, "Use a morphism defined in the source file")->excludes(mopt);
  lift->add_option("--src-subgroup", src_sub)->capture_default_str();
  lift->add_option("--dst-subgroup", dst_sub)->capture_default_str();
  lift->add_option("--search-bound", s.search_bound, "Box radius for non-simplicial targets (0 = automatic)")
      ->capture_default_str();
  lift->add_flag("--force-checks", s.force_checks, "Run effectivity and support checks on simplicial targets too");
  auto* iso = app.add_subcommand("iso", "Decide toric isomorphism");
  iso->add_option("a", file_a)->required();
  iso->add_option("b", file_b)->required();
  auto* split = app.add_subcommand("split", "Split off the torus factor");
  split->add_option("file", file_a)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }
  if (lift->parsed() && matrix.empty() && morphism.empty()) {
    err << "error: lift needs --matrix or --morphism\n" << lift->help();
    return 1;
  }

  const auto* sub = app.get_subcommands().front();
  Report report(sub->get_name());
  try {
    int code = 0;
    if (sub == validate)
      code = cmd_validate(file_a, s, report);
    else if (sub == invariants)
      code = cmd_invariants(file_a, s, report);
    else if (sub == present)
      code = cmd_present(file_a, mode, out_file, s, report);
    else if (sub == lift)
      code = cmd_lift(file_a, file_b, matrix, morphism, src_sub, dst_sub, s, report);
    else if (sub == iso)
      code = cmd_iso(file_a, file_b, s, report);
    else
      code = cmd_split(file_a, s, report);
    report.emit(out, s.format == "json");
    return code;
  } catch (const InputError& e) {
    print_issues(err, e.what(), e.issues());
    return 1;
  } catch (const DomainError& e) {
    print_issues(err, e.what(), {});
    return 1;
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace toriclift
