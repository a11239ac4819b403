#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sawlab/cli.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/estimator.hpp"
#include "sawlab/families.hpp"
#include "sawlab/pi.hpp"
#include "sawlab/proof.hpp"
#include "sawlab/report.hpp"
#include "sawlab/saw.hpp"

namespace py = pybind11;
using namespace sawlab;

namespace {

// Results cross the boundary as JSON text; the Python side decodes them.
std::string dump(const report::Json& j) { return j.dump(); }

VertexId root_or_default(const GraphRule& rule, const std::optional<std::string>& root) {
  return root ? rule.parse_vertex(*root) : rule.orbit_reps().front();
}

EnumOptions enum_options(unsigned threads, std::optional<std::uint64_t> budget) {
  EnumOptions o;
  o.threads = threads;
  if (budget) o.node_budget = *budget;
  return o;
}

std::vector<SawCountSeries> per_rep(const GraphRule& rule, int n, const EnumOptions& o) {
  std::vector<SawCountSeries> out;
  for (const auto& v : rule.orbit_reps()) out.push_back(count_saws(rule, v, n, o));
  return out;
}

struct Family {
  RulePtr rule;
  const GraphRule& operator*() const { return *rule; }
  const GraphRule* operator->() const { return rule.get(); }
};

bool any_truncated(const std::vector<SawCountSeries>& s) {
  for (const auto& x : s)
    if (x.truncated) return true;
  return false;
}

}  // namespace

PYBIND11_MODULE(_sawlab, m) {
  m.doc() = "Self-avoiding walk enumeration and connective-constant checks";
  m.attr("__version__") = std::string(cli::kVersion);

  auto base = py::register_exception<SawError>(m, "SawError", PyExc_RuntimeError);
  py::register_exception<InvalidVertex>(m, "InvalidVertex", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<SpecError>(m, "SpecError", base.ptr());

  py::class_<Family>(m, "Family")
      .def_property_readonly("name", [](const Family& f) { return f->name(); })
      .def_property_readonly("degree", [](const Family& f) { return f->max_degree(); })
      .def_property_readonly("is_simple", [](const Family& f) { return f->is_simple(); })
      .def_property_readonly("has_cycle", [](const Family& f) { return f->has_cycle(); })
      .def_property_readonly("vertex_transitive",
                             [](const Family& f) { return f->transitivity() == Transitivity::VertexTransitive; })
      .def("orbit_reps",
           [](const Family& f) {
             std::vector<std::string> out;
             for (const auto& v : f->orbit_reps()) out.push_back(f->format_vertex(v));
             return out;
           })
      .def(
          "neighbors",
          [](const Family& f, const std::string& v) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& inc : f->neighbors(f->parse_vertex(v)))
              out.emplace_back(f->format_edge(inc.edge), f->format_vertex(inc.to));
            return out;
          },
          py::arg("vertex"))
      .def("__repr__", [](const Family& f) { return "<sawlab.Family " + f->name() + ">"; });

  m.def("parse_family", [](const std::string& text) { return Family{parse_family(text)}; }, py::arg("text"));

  m.def(
      "_count_saws",
      [](const Family& rule, int n, std::optional<std::string> root, std::optional<std::string> avoid_edge,
         std::optional<std::string> midedge, std::optional<int> extendable, unsigned threads,
         std::optional<std::uint64_t> budget) {
        const auto o = enum_options(threads, budget);
        py::gil_scoped_release release;
        SawCountSeries s;
        if (midedge) {
          s = count_saws_midedge(*rule, rule->parse_edge(*midedge), n, o);
        } else {
          const auto v = root_or_default(*rule, root);
          if (avoid_edge)
            s = count_saws_avoiding(*rule, v, rule->parse_edge(*avoid_edge), n, o);
          else if (extendable)
            s = count_extendable(*rule, v, n, *extendable, o);
          else
            s = count_saws(*rule, v, n, o);
        }
        return dump(report::series_json(*rule, s));
      },
      py::arg("family"), py::arg("n"), py::arg("root") = py::none(), py::arg("avoid_edge") = py::none(),
      py::arg("midedge") = py::none(), py::arg("extendable") = py::none(), py::arg("threads") = 1,
      py::arg("budget") = py::none());

  m.def(
      "_estimate",
      [](const Family& rule, int n, const std::string& method, unsigned threads, std::optional<std::uint64_t> budget) {
        const auto m_ = parse_method(method);
        const auto o = enum_options(threads, budget);
        py::gil_scoped_release release;
        const auto reps = per_rep(*rule, n, o);
        const auto g = estimate_growth(*rule, reps, m_);
        return dump(report::estimate_json(*rule, g, reps, any_truncated(reps)));
      },
      py::arg("family"), py::arg("n"), py::arg("method") = "ratio_extrapolation", py::arg("threads") = 1,
      py::arg("budget") = py::none());

  m.def(
      "_check_bounds",
      [](const Family& rule, int n, unsigned threads) {
        py::gil_scoped_release release;
        const auto reps = per_rep(*rule, n, enum_options(threads, std::nullopt));
        const auto g = estimate_growth(*rule, reps);
        return dump(report::bounds_json(g, check_bounds(*rule, g)));
      },
      py::arg("family"), py::arg("n"), py::arg("threads") = 1);

  m.def(
      "_check_pi",
      [](const Family& rule, std::optional<std::string> root, int L, int D, int P, unsigned threads) {
        PiOptions o;
        o.L = L;
        o.D = D;
        o.P = P;
        o.threads = threads;
        const auto v = root_or_default(*rule, root);
        py::gil_scoped_release release;
        return dump(report::pi_certificate_json(*rule, check_pi(*rule, v, o)));
      },
      py::arg("family"), py::arg("root") = py::none(), py::arg("L") = 8, py::arg("D") = 12, py::arg("P") = 12,
      py::arg("threads") = 1);

  m.def(
      "_blue_count_audit",
      [](const Family& rule, int n, int D, std::optional<std::string> root, unsigned threads) {
        const auto v = root_or_default(*rule, root);
        py::gil_scoped_release release;
        return dump(report::audit_json(*rule, blue_count_audit(*rule, v, n, D, threads)));
      },
      py::arg("family"), py::arg("n"), py::arg("D") = 12, py::arg("root") = py::none(), py::arg("threads") = 1);

  m.def(
      "_strictness",
      [](const Family& rule, int search_bound, std::optional<int> estimate_n, unsigned threads) {
        const auto o = enum_options(threads, std::nullopt);
        py::gil_scoped_release release;
        std::optional<GrowthEstimate> est;
        if (estimate_n) est = estimate_growth(*rule, per_rep(*rule, *estimate_n, o));
        return dump(report::strictness_json(*rule, mu_strictness_report(*rule, est, search_bound, o)));
      },
      py::arg("family"), py::arg("search_bound") = 12, py::arg("estimate_n") = py::none(), py::arg("threads") = 1);

  m.def(
      "_menger",
      [](const Family& rule, int n, std::optional<std::string> root) {
        const auto v = root_or_default(*rule, root);
        py::gil_scoped_release release;
        const auto r = menger_disjoint_paths(*rule, v, n);
        return dump(report::menger_json(*rule, r, validate_menger(*rule, r)));
      },
      py::arg("family"), py::arg("n"), py::arg("root") = py::none());

  m.def(
      "_inequalities",
      [](const Family& rule, const std::string& suite, int n, unsigned threads) {
        const auto o = enum_options(threads, std::nullopt);
        py::gil_scoped_release release;
        InequalityReport r;
        if (suite == "hammersley")
          r = hammersley_suite(*rule, n, o);
        else if (suite == "submultiplicativity")
          r = submultiplicativity_suite(*rule, n, o);
        else if (suite == "trivial_bound")
          r = trivial_bound_suite(*rule, n, o);
        else
          throw SpecError("unknown inequality suite '" + suite + "'");
        return dump(report::inequality_json(*rule, r));
      },
      py::arg("family"), py::arg("suite"), py::arg("n"), py::arg("threads") = 1);

  m.def("_g_function", [](int delta, int b) { return to_decimal(g_function(delta, b)); }, py::arg("delta"),
        py::arg("branches"));

  m.def(
      "_g_induction",
      [](int delta_max, int b_max) {
        py::gil_scoped_release release;
        return dump(report::g_induction_json(verify_g_induction(delta_max, b_max)));
      },
      py::arg("delta_max") = 8, py::arg("branches_max") = 50);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
