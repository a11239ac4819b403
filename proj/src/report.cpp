#include "sawlab/report.hpp"

#include <sstream>

#include "sawlab/errors.hpp"

namespace sawlab::report {

namespace {

Json counts_json(const std::vector<Count>& counts) {
  Json a = Json::array();
  for (const auto& c : counts) a.push_back(to_decimal(c));
  return a;
}

Json opt_edge(const GraphRule& rule, const std::optional<EdgeRef>& e) {
  return e ? Json(rule.format_edge(*e)) : Json(nullptr);
}

Json edges_json(const GraphRule& rule, const std::vector<EdgeRef>& es) {
  Json a = Json::array();
  for (const auto& e : es) a.push_back(rule.format_edge(e));
  return a;
}

std::vector<EdgeRef> edges_from_json(const GraphRule& rule, const Json& j) {
  std::vector<EdgeRef> out;
  for (const auto& e : j) out.push_back(rule.parse_edge(e.get<std::string>()));
  return out;
}

// Index 0 of fekete vectors is a placeholder; emit n = 1.. only.
Json from_one(const std::vector<double>& v) {
  Json a = Json::array();
  for (std::size_t i = 1; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json opt_double(const std::optional<double>& d) { return d ? Json(*d) : Json(nullptr); }

}  // namespace

Json series_json(const GraphRule& rule, const SawCountSeries& s) {
  Json j;
  j["kind"] = "series";
  j["family"] = s.family;
  if (s.root_kind == RootKind::MidEdge) {
    j["root_kind"] = "midedge";
    j["root"] = opt_edge(rule, s.root_edge);
  } else {
    j["root_kind"] = "vertex";
    j["root"] = rule.format_vertex(s.root);
  }
  j["avoided_edge"] = opt_edge(rule, s.avoided_edge);
  j["extendable_lookahead"] = s.extendable_lookahead ? Json(*s.extendable_lookahead) : Json(nullptr);
  j["n_max"] = s.n_max;
  j["n_reached"] = s.n_reached();
  j["truncated"] = s.truncated;
  j["counts"] = counts_json(s.counts);
  return j;
}

std::string series_csv(const SawCountSeries& s) {
  std::ostringstream out;
  out << "n,count\n";
  for (std::size_t n = 0; n < s.counts.size(); ++n) out << n << ',' << to_decimal(s.counts[n]) << '\n';
  return out.str();
}

Json fit_json(const MuFit& fit) {
  Json j;
  j["method"] = to_string(fit.method);
  j["mu"] = fit.mu;
  j["residual"] = fit.residual;
  j["n_range"] = Json::array({fit.n_lo, fit.n_hi});
  if (fit.method == EstimateMethod::RatioExtrapolation)
    j["period"] = fit.period;
  else
    j["gamma"] = fit.gamma;
  return j;
}

Json estimate_json(const GraphRule& rule, const GrowthEstimate& g, const std::vector<SawCountSeries>& per_rep,
                   bool truncated) {
  Json j;
  j["kind"] = "estimate";
  j["family"] = g.family;
  j["n_max"] = g.n_max;
  j["truncated"] = truncated;
  j["method"] = g.fit ? Json(to_string(g.fit->method)) : Json(nullptr);
  j["mu_hat"] = opt_double(g.mu_hat());
  j["fekete_upper"] = from_one(g.fekete_upper);
  j["fekete_raw"] = from_one(g.fekete_raw);
  j["sup_counts"] = counts_json(g.sup_counts);
  Json ratios = Json::array();
  for (const auto& r : g.ratios) {
    ratios.push_back(Json{{"n", r.n},
                          {"numerator", to_decimal(r.numerator)},
                          {"denominator", to_decimal(r.denominator)},
                          {"value", r.value}});
  }
  j["ratios"] = std::move(ratios);
  Json diag;
  diag["fit"] = g.fit ? fit_json(*g.fit) : Json(nullptr);
  diag["cross_check"] = g.cross_check ? fit_json(*g.cross_check) : Json(nullptr);
  diag["methods_disagree"] = g.methods_disagree;
  diag["disagreement_threshold"] = kMethodDisagreement;
  j["diagnostics"] = std::move(diag);
  if (const auto t = exact_target(rule.spec())) {
    Json tj;
    tj["mu_exact"] = t->mu_exact;
    tj["closed_form"] = t->closed_form;
    tj["error"] = g.mu_hat() ? Json(*g.mu_hat() - t->mu_exact) : Json(nullptr);
    j["target"] = std::move(tj);
  } else {
    j["target"] = nullptr;
  }
  Json series = Json::array();
  for (const auto& s : per_rep) {
    series.push_back(Json{{"root", rule.format_vertex(s.root)},
                          {"n_reached", s.n_reached()},
                          {"truncated", s.truncated},
                          {"counts", counts_json(s.counts)}});
  }
  j["series"] = std::move(series);
  return j;
}

std::string estimate_csv(const GrowthEstimate& g) {
  std::ostringstream out;
  out.precision(17);
  out << "n,sup_count,fekete_raw,fekete_upper,ratio\n";
  for (int n = 1; n <= g.n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out << n << ',' << to_decimal(g.sup_counts[i]) << ',' << g.fekete_raw[i] << ',' << g.fekete_upper[i] << ','
        << g.ratios[i - 1].value << '\n';
  }
  return out.str();
}

Json bounds_json(const GrowthEstimate& g, const BoundReport& r) {
  Json j;
  j["kind"] = "bounds";
  j["family"] = r.family;
  j["degree"] = r.degree;
  j["n_max"] = g.n_max;
  j["fekete_upper"] = from_one(g.fekete_upper);
  j["mu_hat"] = opt_double(g.mu_hat());
  j["method"] = g.fit ? Json(to_string(g.fit->method)) : Json(nullptr);
  Json clauses;
  Json details = Json::array();
  for (const auto& c : r.clauses) {
    clauses[c.name] = c.applicable ? Json(c.pass) : Json(nullptr);
    details.push_back(Json{{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["clauses"] = std::move(clauses);
  j["clause_details"] = std::move(details);
  j["strict_gap_n"] = r.strict_gap_n ? Json(*r.strict_gap_n) : Json(nullptr);
  j["pass"] = r.pass();
  return j;
}

Json prefix_json(const GraphRule& rule, const SawPrefix& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices) vs.push_back(rule.format_vertex(v));
  return Json{{"vertices", std::move(vs)}, {"edges", edges_json(rule, p.edges)}};
}

SawPrefix prefix_from_json(const GraphRule& rule, const Json& j) {
  SawPrefix p;
  for (const auto& v : j.at("vertices")) p.vertices.push_back(rule.parse_vertex(v.get<std::string>()));
  p.edges = edges_from_json(rule, j.at("edges"));
  return p;
}

Json pi_certificate_json(const GraphRule& rule, const PiCertificate& c) {
  Json j;
  j["kind"] = "pi_certificate";
  j["family"] = c.family;
  j["vertex"] = rule.format_vertex(c.vertex);
  j["bounds"] = Json{{"L", c.L}, {"D", c.D}, {"P", c.P}};
  j["outcome"] = to_string(c.outcome);
  j["cubic"] = c.cubic;
  j["stats"] = Json{{"prefixes_checked", c.prefixes_checked},
                    {"triples_checked", c.triples_checked},
                    {"red_edges_seen", c.red_edges_seen},
                    {"unknown_verdicts", c.unknown_verdicts},
                    {"parallel_disagreements", c.parallel_disagreements},
                    {"validator_failures", c.validator_failures}};
  if (c.violation) {
    const auto& v = *c.violation;
    Json vj;
    vj["prefix"] = prefix_json(rule, v.triple.prefix);
    vj["triple"] = Json{{"e", rule.format_edge(v.triple.e)},
                        {"w", rule.format_vertex(v.triple.w())},
                        {"e_prime", rule.format_edge(v.triple.e_prime)}};
    vj["red_edges"] = edges_json(rule, v.red_edges);
    vj["unmatched"] = edges_json(rule, v.unmatched);
    j["violation"] = std::move(vj);
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

PiCertificate pi_certificate_from_json(const GraphRule& rule, const Json& j) {
  try {
    if (j.at("kind") != "pi_certificate") throw SpecError("not a pi certificate");
    PiCertificate c;
    c.family = j.at("family").get<std::string>();
    if (c.family != rule.name()) throw SpecError("certificate is for family " + c.family);
    c.vertex = rule.parse_vertex(j.at("vertex").get<std::string>());
    c.L = j.at("bounds").at("L").get<int>();
    c.D = j.at("bounds").at("D").get<int>();
    c.P = j.at("bounds").at("P").get<int>();
    const auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "certified")
      c.outcome = PiOutcome::CertifiedUpTo;
    else if (outcome == "violation")
      c.outcome = PiOutcome::Violation;
    else if (outcome == "partial")
      c.outcome = PiOutcome::Partial;
    else
      throw SpecError("unknown outcome " + outcome);
    c.cubic = j.at("cubic").get<bool>();
    const auto& st = j.at("stats");
    c.prefixes_checked = st.at("prefixes_checked").get<std::uint64_t>();
    c.triples_checked = st.at("triples_checked").get<std::uint64_t>();
    c.red_edges_seen = st.at("red_edges_seen").get<std::uint64_t>();
    c.unknown_verdicts = st.at("unknown_verdicts").get<std::uint64_t>();
    c.parallel_disagreements = st.at("parallel_disagreements").get<std::uint64_t>();
    c.validator_failures = st.at("validator_failures").get<std::uint64_t>();
    if (!j.at("violation").is_null()) {
      const auto& vj = j.at("violation");
      PiViolation v;
      v.triple.prefix = prefix_from_json(rule, vj.at("prefix"));
      v.triple.e = rule.parse_edge(vj.at("triple").at("e").get<std::string>());
      v.triple.e_prime = rule.parse_edge(vj.at("triple").at("e_prime").get<std::string>());
      v.red_edges = edges_from_json(rule, vj.at("red_edges"));
      v.unmatched = edges_from_json(rule, vj.at("unmatched"));
      c.violation = std::move(v);
    }
    return c;
  } catch (const Json::exception& e) {
    throw SpecError(std::string("malformed certificate: ") + e.what());
  }
}

Json audit_json(const GraphRule& rule, const BlueCountAudit& a) {
  Json j;
  j["kind"] = "blue_count_audit";
  j["family"] = a.family;
  j["vertex"] = rule.format_vertex(a.vertex);
  j["n"] = a.n;
  j["D"] = a.D;
  j["prefixes_audited"] = a.prefixes_audited;
  j["prefixes_inconclusive"] = a.prefixes_inconclusive;
  j["accounting_failures"] = a.accounting_failures;
  j["bound_failures"] = a.bound_failures;
  j["min_blue_total"] = a.min_blue_total;
  j["required_blue_total"] = a.n * (rule.max_degree() - 2);
  if (a.first_failure) {
    Json steps = Json::array();
    for (const auto& s : a.first_failure->steps) steps.push_back(Json{{"s", s.s}, {"red", s.red}, {"blue", s.blue}});
    j["first_failure"] = Json{{"prefix", prefix_json(rule, a.first_failure->prefix)},
                              {"steps", std::move(steps)},
                              {"blue_total", a.first_failure->blue_total}};
  } else {
    j["first_failure"] = nullptr;
  }
  j["pass"] = a.pass();
  return j;
}

Json menger_json(const GraphRule& rule, const MengerResult& m, const std::string& validation) {
  Json j;
  j["vertex"] = rule.format_vertex(m.source);
  j["radius"] = m.ball.radius;
  j["interior_vertices"] = m.ball.vertices.size();
  j["interior_edges"] = m.ball.interior_edge_count();
  j["boundary_edges"] = m.ball.boundary_edge_count();
  j["flow_value"] = m.flow_value;
  Json paths = Json::array();
  for (const auto& p : m.paths) {
    Json vs = Json::array();
    for (const auto& v : p.vertices) vs.push_back(rule.format_vertex(v));
    paths.push_back(Json{{"vertices", std::move(vs)}, {"edges", edges_json(rule, p.edges)}});
  }
  j["paths"] = std::move(paths);
  j["valid"] = validation.empty();
  if (!validation.empty()) j["validation_error"] = validation;
  return j;
}

Json strictness_json(const GraphRule& rule, const StrictnessReport& r) {
  Json j;
  j["kind"] = "strictness";
  j["family"] = r.family;
  j["degree"] = r.degree;
  j["status"] = to_string(r.status);
  j["N"] = r.cutoff.N ? Json(*r.cutoff.N) : Json(nullptr);
  j["search_bound"] = r.cutoff.search_bound;
  j["bound"] = opt_double(r.bound);
  if (r.cutoff.N) {
    j["bound_form"] = "(" + std::to_string(r.degree - 1) + "^" + std::to_string(*r.cutoff.N) + " - 1)^(1/" +
                      std::to_string(*r.cutoff.N) + ")";
  }
  j["envelope"] = opt_double(r.envelope);
  j["mu_hat"] = opt_double(r.mu_hat);
  j["envelope_ok"] = r.envelope_ok;
  j["mu_hat_ok"] = r.mu_hat_ok;
  j["cutoff_truncated"] = r.cutoff.truncated;
  Json pairs = Json::array();
  for (const auto& p : r.cutoff.pairs) {
    Json pj{{"u", rule.format_vertex(p.u)}, {"e", rule.format_edge(p.e)}};
    if (r.cutoff.N && p.series.n_reached() >= *r.cutoff.N) {
      pj["sigma_N"] = to_decimal(p.series.counts[static_cast<std::size_t>(*r.cutoff.N)]);
      pj["limit"] = to_decimal(ipow(Count(r.degree - 1), static_cast<unsigned>(*r.cutoff.N)) - 1);
    }
    pj["counts"] = counts_json(p.series.counts);
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  j["detail"] = r.detail;
  return j;
}

Json g_induction_json(const GInductionReport& r) {
  Json j;
  j["delta_max"] = r.delta_max;
  j["B_max"] = r.branches_max;
  j["inequalities"] = r.inequalities;
  j["case_identities"] = r.case_identities;
  j["invariants"] = r.invariants;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    fails.push_back(Json{{"delta", f.delta},
                         {"B", f.branches},
                         {"gamma", f.gamma},
                         {"check", f.check},
                         {"lhs", to_decimal(f.lhs)},
                         {"rhs", to_decimal(f.rhs)}});
  }
  j["failures"] = std::move(fails);
  j["pass"] = r.pass();
  return j;
}

Json inequality_json(const GraphRule& rule, const InequalityReport& r) {
  Json j;
  j["name"] = r.name;
  j["n_max"] = r.n_max;
  j["checked"] = r.checked;
  j["truncated"] = r.truncated;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    fails.push_back(Json{{"u", rule.format_vertex(f.u)},
                         {"v", rule.format_vertex(f.v)},
                         {"n", f.n},
                         {"m", f.m},
                         {"lhs", to_decimal(f.lhs)},
                         {"rhs", to_decimal(f.rhs)}});
  }
  j["failures"] = std::move(fails);
  j["pass"] = r.pass();
  return j;
}

}  // namespace sawlab::report
