#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dblie/brackets.hpp"
#include "dblie/cli.hpp"
#include "dblie/dmodules.hpp"
#include "dblie/error.hpp"
#include "dblie/ideals.hpp"
#include "dblie/rb.hpp"
#include "dblie/suites.hpp"
#include "dblie/text_format.hpp"

namespace py = pybind11;
using namespace dblie;

namespace {

py::dict to_dict(const VerificationReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["target"] = r.target;
  d["window"] = r.window;
  d["cutoff"] = r.cutoff;
  d["seed"] = r.seed ? py::cast(*r.seed) : py::none();
  d["status"] = status_name(r.status);
  d["counterexample"] = r.counterexample;
  d["notes"] = r.notes;
  return d;
}

py::list to_list(const std::vector<VerificationReport>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(to_dict(r));
  return out;
}

Vec argument(const DoubleBracket& b, const std::string& text) {
  auto basis = b.carrier().window_basis(0);
  Space sp = basis.empty() ? Space::poly : basis.front().space;
  return parse_vec(text, sp == Space::laurent ? Space::laurent : Space::poly);
}

}  // namespace

PYBIND11_MODULE(_dblie, m) {
  m.doc() = "Exact double Lie algebras and Rota-Baxter operators";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<WindowError>(m, "WindowError", PyExc_ValueError);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

  m.def("operator_names", &catalog_rb_names);
  m.def("bracket_names", &catalog_bracket_names);
  m.def("module_names", &catalog_module_names);

  m.def(
      "bracket_eval",
      [](const std::string& name, const std::string& a, const std::string& b) {
        auto br = catalog_bracket(name);
        return render(br.eval(argument(br, a), argument(br, b)));
      },
      py::arg("name"), py::arg("a"), py::arg("b"), "<<a, b>> rendered as text; a, b use the polynomial grammar.");

  m.def(
      "divided_difference",
      [](const std::string& variant, std::int64_t n, std::int64_t k) {
        return render(divided_difference(parse_variant(variant), n, k));
      },
      py::arg("variant"), py::arg("n"), py::arg("m"));

  m.def(
      "verify_operator",
      [](const std::string& name, std::int64_t window, std::int64_t cutoff) {
        auto r = catalog_rb(name);
        std::vector<VerificationReport> out;
        {
          py::gil_scoped_release release;
          out = {check_rb_identity(r, window, cutoff), check_skew_symmetry(r, window)};
        }
        return to_list(out);
      },
      py::arg("name"), py::arg("window") = 8, py::arg("cutoff") = 16);

  m.def(
      "verify_bracket",
      [](const std::string& name, std::int64_t window) {
        auto b = catalog_bracket(name);
        return to_list({check_anticommutativity(b, window), check_jacobi(b, window)});
      },
      py::arg("name"), py::arg("window") = 8);

  m.def(
      "check_leibniz", [](const std::string& name, std::int64_t window) { return to_dict(check_leibniz(catalog_bracket(name), window)); },
      py::arg("name"), py::arg("window") = 8);

  m.def(
      "ideal_closure",
      [](const std::string& name, const std::vector<std::string>& seeds, std::int64_t window, std::size_t budget) {
        auto b = catalog_bracket(name);
        std::vector<Vec> gens;
        for (const auto& s : seeds) gens.push_back(argument(b, s));
        auto res = ideal_closure(b, gens, window, budget);
        std::vector<std::string> spans;
        for (const auto& c : res.closures) spans.push_back(render(c));
        py::dict d;
        d["closures"] = spans;
        d["nodes"] = res.nodes;
        d["exhausted"] = res.exhausted;
        return d;
      },
      py::arg("name"), py::arg("seeds"), py::arg("window") = 8, py::arg("budget") = 20000);

  m.def(
      "simplicity_probe",
      [](const std::string& name, std::int64_t window, std::size_t seeds, std::int64_t degree, std::uint64_t seed) {
        auto b = catalog_bracket(name);
        return to_dict(simplicity_probe(b, window, random_polynomials(seeds, degree, seed)));
      },
      py::arg("name"), py::arg("window") = 8, py::arg("seeds") = 50, py::arg("degree") = 8,
      py::arg("seed") = SuiteOptions{}.seed);

  m.def(
      "module_report", [](const std::string& name, std::int64_t window) { return to_list(module_report(name, window)); },
      py::arg("name"), py::arg("window") = 8);

  m.def(
      "run_suite",
      [](int criterion, bool quick) {
        SuiteOptions o;
        o.quick = quick;
        SuiteResult s;
        {
          py::gil_scoped_release release;
          s = run_suite(criterion, o);
        }
        py::dict d;
        d["criterion"] = s.criterion;
        d["title"] = s.title;
        d["passed"] = s.passed();
        d["reports"] = to_list(s.reports);
        return d;
      },
      py::arg("criterion"), py::arg("quick") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = dblie::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line; returns (exit code, stdout, stderr).");
}
