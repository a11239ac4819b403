#include "sawlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "sawlab/errors.hpp"
#include "sawlab/estimator.hpp"
#include "sawlab/families.hpp"
#include "sawlab/pi.hpp"
#include "sawlab/proof.hpp"
#include "sawlab/report.hpp"
#include "sawlab/saw.hpp"

namespace sawlab::cli {

namespace {

using report::Json;

constexpr double kDefaultWorkCap = 2e6;  // walks of the default length, roughly

struct Flags {
  std::string family;
  std::optional<int> n;
  std::string root;
  std::string avoid_edge;
  std::string midedge;
  std::optional<int> extendable;
  std::optional<int> audit;
  int L = 8;
  int D = 12;
  int P = 12;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string format = "json";
  std::string method = "ratio_extrapolation";
  std::string out;
  std::string manifest;
  std::string check;
};

struct Outcome {
  std::string body;
  int exit_code = kExitPass;
};

EnumOptions enum_options(const Flags& f) {
  EnumOptions o;
  o.threads = f.threads;
  o.node_budget = f.budget;
  return o;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<VertexId> roots(const GraphRule& rule, const Flags& f) {
  if (!f.root.empty()) return {rule.parse_vertex(f.root)};
  return rule.orbit_reps();
}

struct EstimateRun {
  std::vector<SawCountSeries> per_rep;
  GrowthEstimate growth;
  bool truncated = false;
};

EstimateRun run_estimate(const GraphRule& rule, int n, EstimateMethod method, const EnumOptions& eo) {
  EstimateRun r;
  for (const auto& v : rule.orbit_reps()) {
    r.per_rep.push_back(count_saws(rule, v, n, eo));
    r.truncated = r.truncated || r.per_rep.back().truncated;
  }
  if (r.truncated) {
    r.growth = fekete_bounds(rule, r.per_rep);
  } else {
    r.growth = estimate_growth(rule, r.per_rep, method);
  }
  return r;
}

Outcome cmd_enumerate(const Flags& f) {
  const auto rule = parse_family(f.family);
  const int n = f.n.value_or(default_n(rule->spec()));
  if (n < 0) throw SpecError("--n must be >= 0");
  const auto eo = enum_options(f);
  SawCountSeries s;
  if (!f.midedge.empty()) {
    if (!f.root.empty() || !f.avoid_edge.empty() || f.extendable)
      throw SpecError("--midedge cannot be combined with --root, --avoid-edge or --extendable");
    s = count_saws_midedge(*rule, rule->parse_edge(f.midedge), n, eo);
  } else {
    const VertexId root = f.root.empty() ? rule->orbit_reps().front() : rule->parse_vertex(f.root);
    if (!f.avoid_edge.empty() && f.extendable)
      throw SpecError("--avoid-edge and --extendable cannot be combined");
    if (!f.avoid_edge.empty()) {
      s = count_saws_avoiding(*rule, root, rule->parse_edge(f.avoid_edge), n, eo);
    } else if (f.extendable) {
      if (*f.extendable < 1) throw SpecError("--extendable needs a depth >= 1");
      s = count_extendable(*rule, root, n, *f.extendable, eo);
    } else {
      s = count_saws(*rule, root, n, eo);
    }
  }
  Outcome o;
  o.body = f.format == "csv" ? report::series_csv(s) : dump(report::series_json(*rule, s));
  o.exit_code = s.truncated ? kExitPartial : kExitPass;
  return o;
}

Outcome cmd_estimate(const Flags& f) {
  const auto rule = parse_family(f.family);
  const int n = f.n.value_or(default_n(rule->spec()));
  const auto run = run_estimate(*rule, n, parse_method(f.method), enum_options(f));
  Outcome o;
  o.body = f.format == "csv" ? report::estimate_csv(run.growth)
                             : dump(report::estimate_json(*rule, run.growth, run.per_rep, run.truncated));
  o.exit_code = run.truncated ? kExitPartial : kExitPass;
  return o;
}

Outcome check_bounds_cmd(const GraphRule& rule, const Flags& f) {
  const int n = f.n.value_or(default_n(rule.spec()));
  const auto run = run_estimate(rule, n, parse_method(f.method), enum_options(f));
  const auto rep = check_bounds(rule, run.growth);
  Json j = report::bounds_json(run.growth, rep);
  j["truncated"] = run.truncated;
  Outcome o{dump(j), kExitPass};
  if (!rep.pass())
    o.exit_code = kExitViolation;
  else if (run.truncated)
    o.exit_code = kExitPartial;
  return o;
}

Outcome check_pi_cmd(const GraphRule& rule, const Flags& f) {
  PiOptions po;
  po.L = f.L;
  po.D = f.D;
  po.P = f.P;
  po.threads = f.threads;
  Json certs = Json::array();
  Json audits = Json::array();
  bool violation = false;
  bool partial = false;
  bool internal = false;
  bool audit_failed = false;
  for (const auto& v : roots(rule, f)) {
    const auto c = check_pi(rule, v, po);
    violation = violation || c.outcome == PiOutcome::Violation;
    partial = partial || c.outcome == PiOutcome::Partial;
    internal = internal || c.validator_failures > 0 || c.parallel_disagreements > 0;
    certs.push_back(report::pi_certificate_json(rule, c));
    if (f.audit) {
      const auto a = blue_count_audit(rule, v, *f.audit, f.D, f.threads);
      audit_failed = audit_failed || !a.pass();
      partial = partial || a.prefixes_inconclusive > 0;
      audits.push_back(report::audit_json(rule, a));
    }
  }
  Json j;
  j["kind"] = "pi_check";
  j["family"] = rule.name();
  j["bounds"] = Json{{"L", f.L}, {"D", f.D}, {"P", f.P}};
  j["outcome"] = violation ? "violation" : partial ? "partial" : "certified";
  j["certificates"] = std::move(certs);
  if (f.audit) j["audits"] = std::move(audits);
  Outcome o{dump(j), kExitPass};
  if (violation || internal || audit_failed)
    o.exit_code = kExitViolation;
  else if (partial)
    o.exit_code = kExitPartial;
  return o;
}

Outcome check_menger_cmd(const GraphRule& rule, const Flags& f) {
  const int r_max = f.n.value_or(4);
  if (r_max < 1) throw SpecError("--n (largest radius) must be >= 1");
  const bool expect_full = rule.transitivity() == Transitivity::VertexTransitive && rule.is_simple() &&
                           rule.is_regular();
  Json results = Json::array();
  bool pass = true;
  for (const auto& v : roots(rule, f)) {
    for (int radius = std::min(2, r_max); radius <= r_max; ++radius) {
      const auto m = menger_disjoint_paths(rule, v, radius);
      const std::string why = validate_menger(rule, m);
      pass = pass && why.empty() && (!expect_full || m.flow_value == rule.max_degree());
      results.push_back(report::menger_json(rule, m, why));
    }
  }
  Json j;
  j["kind"] = "menger";
  j["family"] = rule.name();
  j["expected_flow"] = expect_full ? Json(rule.max_degree()) : Json(nullptr);
  j["results"] = std::move(results);
  j["pass"] = pass;
  return {dump(j), pass ? kExitPass : kExitViolation};
}

Outcome check_strictness_cmd(const GraphRule& rule, const Flags& f) {
  const int bound = f.n.value_or(12);
  const auto eo = enum_options(f);
  std::optional<GrowthEstimate> estimate;
  if (rule.has_cycle()) estimate = run_estimate(rule, default_n(rule.spec()), parse_method(f.method), eo).growth;
  const auto rep = mu_strictness_report(rule, estimate, bound, eo);
  Outcome o{dump(report::strictness_json(rule, rep)), kExitPass};
  switch (rep.status) {
    case StrictnessStatus::Certified:
    case StrictnessStatus::NotApplicable:
      break;
    case StrictnessStatus::NotWitnessed:
      o.exit_code = kExitPartial;
      break;
    case StrictnessStatus::Violated:
      o.exit_code = kExitViolation;
      break;
  }
  return o;
}

Outcome check_lemmas_cmd(const GraphRule& rule, const Flags& f) {
  const int nd = default_n(rule.spec());
  const int n_ham = f.n.value_or(std::min(12, nd - 1));
  const auto eo = enum_options(f);
  const auto g = verify_g_induction(8, 50);
  const auto ham = hammersley_suite(rule, n_ham, eo);
  const auto sub = submultiplicativity_suite(rule, std::min(14, nd), eo);
  const auto triv = trivial_bound_suite(rule, nd, eo);
  Json j;
  j["kind"] = "lemmas";
  j["family"] = rule.name();
  j["g_induction"] = report::g_induction_json(g);
  j["hammersley"] = report::inequality_json(rule, ham);
  j["submultiplicativity"] = report::inequality_json(rule, sub);
  j["trivial_bound"] = report::inequality_json(rule, triv);
  const bool failed = !g.pass() || !ham.failures.empty() || !sub.failures.empty() || !triv.failures.empty();
  const bool truncated = ham.truncated || sub.truncated || triv.truncated;
  j["pass"] = !failed && !truncated;
  return {dump(j), failed ? kExitViolation : truncated ? kExitPartial : kExitPass};
}

Outcome cmd_check(const Flags& f) {
  const auto rule = parse_family(f.family);
  if (f.format != "json") throw SpecError("check reports are JSON only");
  if (f.check == "pi") return check_pi_cmd(*rule, f);
  if (f.check == "bounds") return check_bounds_cmd(*rule, f);
  if (f.check == "menger") return check_menger_cmd(*rule, f);
  if (f.check == "strictness") return check_strictness_cmd(*rule, f);
  if (f.check == "lemmas") return check_lemmas_cmd(*rule, f);
  throw SpecError("unknown check '" + f.check + "'");
}

void write_manifest(const Flags& f, const std::string& subcommand, const std::vector<std::string>& args,
                    double seconds, int exit_code) {
  Json m;
  m["tool"] = "sawlab";
  m["version"] = std::string(kVersion);
  std::string cmd = "sawlab";
  for (const auto& a : args) cmd += " " + a;
  m["command_line"] = cmd;
  m["subcommand"] = subcommand;
  if (!f.check.empty()) m["check"] = f.check;
  m["family"] = f.family;
  m["bounds"] = Json{{"n", f.n ? Json(*f.n) : Json(nullptr)},
                     {"L", f.L},
                     {"D", f.D},
                     {"P", f.P},
                     {"node_budget", f.budget},
                     {"threads", f.threads}};
  m["determinism"] = "no randomness; output depends only on the flags, not on threads or timing";
  m["wall_time_seconds"] = seconds;
  m["exit_code"] = exit_code;
  std::ofstream file(f.manifest);
  if (!file) throw SpecError("cannot write manifest " + f.manifest);
  file << m.dump(2) << "\n";
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--family", f.family, std::string("graph family: ") + std::string(kFamilyGrammar))->required();
  sub->add_option("--n", f.n, "walk length / search bound (family default when omitted)");
  sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  sub->add_option("--budget", f.budget, "search-tree node budget per enumeration attempt");
  sub->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", f.out, "write the report to this file instead of stdout");
  sub->add_option("--manifest", f.manifest, "write a run manifest (flags, version, wall time) to this file");
}

}  // namespace

int default_n(const FamilySpec& family) {
  auto by_growth = [](double degree, double log_growth, int cap) {
    // largest n ≤ cap with degree · growth^(n−1) ≤ work cap
    if (log_growth <= 0) return cap;
    const int n = 1 + static_cast<int>(std::floor(std::log(kDefaultWorkCap / degree) / log_growth));
    return std::clamp(n, 1, cap);
  };
  switch (family.kind) {
    case FamilyKind::Ladder:
      return 30;
    case FamilyKind::Hexagonal:
      return 24;
    case FamilyKind::Loop:
      return 30;
    case FamilyKind::DecoratedLine3:
    case FamilyKind::DecoratedLine4:
      return 40;
    case FamilyKind::Tree:
      return by_growth(family.degree, std::log(family.degree - 1.0), 16);
    case FamilyKind::TreeLoopInterpolation: {
      const double l = family.segment_length;
      return by_growth(family.degree, std::log(family.degree - 1.0) * l / (2 * l - 1), 30);
    }
    case FamilyKind::Custom:
      break;
  }
  return 12;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact self-avoiding walk enumeration and connective-constant checks", "sawlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Flags f;

  auto* enumerate = app.add_subcommand("enumerate", "exact SAW counts from a vertex or mid-edge");
  add_common(enumerate, f);
  enumerate->add_option("--root", f.root, "root vertex, comma-separated coordinates");
  enumerate->add_option("--avoid-edge", f.avoid_edge, "count walks that never use this edge (<u>/<v>[#k])");
  enumerate->add_option("--extendable", f.extendable, "count walks with a continuation of this many steps");
  enumerate->add_option("--midedge", f.midedge, "root the walks at the midpoint of this edge");

  auto* estimate = app.add_subcommand("estimate", "Fekete bounds and extrapolated connective constant");
  add_common(estimate, f);
  estimate->add_option("--method", f.method, "ratio_extrapolation | log_fit");

  auto* check = app.add_subcommand("check", "pi | bounds | menger | strictness | lemmas");
  add_common(check, f);
  check->add_option("what", f.check, "which check to run")
      ->required()
      ->check(CLI::IsMember({"pi", "bounds", "menger", "strictness", "lemmas"}));
  check->add_option("--root", f.root, "restrict to this vertex (default: every orbit representative)");
  check->add_option("--L", f.L, "pi: longest prefix");
  check->add_option("--D", f.D, "pi: colour depth");
  check->add_option("--P", f.P, "pi: longest connecting walk");
  check->add_option("--audit", f.audit, "pi: also audit blue counts on 2n-step prefixes");
  check->add_option("--method", f.method, "bounds/strictness: ratio_extrapolation | log_fit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string subcommand;
  Outcome o;
  try {
    if (enumerate->parsed()) {
      subcommand = "enumerate";
      o = cmd_enumerate(f);
    } else if (estimate->parsed()) {
      subcommand = "estimate";
      o = cmd_estimate(f);
    } else {
      subcommand = "check";
      o = cmd_check(f);
    }
  } catch (const SpecError& e) {
    err << "sawlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidVertex& e) {
    err << "sawlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "sawlab: " << e.what() << "\n";
    return kExitUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (f.out.empty()) {
    out << o.body;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) {
      err << "sawlab: cannot write " << f.out << "\n";
      return kExitUsage;
    }
    file << o.body;
  }
  if (!f.manifest.empty()) {
    try {
      write_manifest(f, subcommand, args, seconds, o.exit_code);
    } catch (const SpecError& e) {
      err << "sawlab: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return o.exit_code;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    return run(args, out, err);
  } catch (const std::exception& e) {
    err << "sawlab: internal error: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace sawlab::cli
