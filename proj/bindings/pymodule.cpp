#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "masseywit/cohomology.hpp"
#include "masseywit/suites.hpp"
#include "masseywit/witness.hpp"

namespace py = pybind11;
using namespace masseywit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unitriangular witnesses for the vanishing of Massey products over F_p";

  py::register_exception<triviality_error>(m, "TrivialityError");
  py::register_exception<search_exhausted>(m, "SearchExhausted");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const input_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "build_summary",
      [](const std::string& spec_json) {
        return presentation_summary_json(parse_group_spec(spec_json));
      },
      py::arg("spec_json"), "Validate a group spec and return its JSON summary.");

  m.def(
      "h1_dim",
      [](const std::string& spec_json) { return h1_dim(parse_group_spec(spec_json)); },
      py::arg("spec_json"));

  m.def(
      "cup_vanishes",
      [](const std::string& spec_json, const CohClass1& a, const CohClass1& b) {
        return cup_vanishes(parse_group_spec(spec_json), a, b);
      },
      py::arg("spec_json"), py::arg("a"), py::arg("b"),
      "Whether the cup product of two degree-1 classes is zero.");

  m.def(
      "check_triviality",
      [](const std::string& spec_json, const std::vector<CohClass1>& alphas) -> int {
        const auto bad = first_nontrivial_cup(parse_group_spec(spec_json), alphas);
        return bad ? static_cast<int>(*bad) : -1;
      },
      py::arg("spec_json"), py::arg("alphas"),
      "-1 when all consecutive cup products vanish, else the first bad 0-based index.");

  m.def(
      "massey_witness",
      [](const std::string& spec_json, const std::vector<CohClass1>& alphas, u64 budget,
         unsigned jobs) {
        const EtypePresentation G = parse_group_spec(spec_json);
        const WitnessAssignment w = massey_witness(G, alphas, budget, jobs);
        return certificate_to_json(G, alphas, w);
      },
      py::arg("spec_json"), py::arg("alphas"), py::arg("budget") = kDefaultSearchBudget,
      py::arg("jobs") = 1,
      "Construct a verified vanishing certificate (JSON) for the class sequence.");

  m.def(
      "verify_certificate",
      [](const std::string& cert_json) {
        const VerifyReport r = verify_certificate_json(cert_json);
        return py::make_tuple(r.pass, r.detail);
      },
      py::arg("cert_json"), "Independently re-verify a certificate; returns (ok, detail).");

  m.def(
      "run_suite",
      [](const std::string& name, unsigned jobs, u64 seed, u64 budget) {
        SuiteOptions opt;
        opt.jobs = jobs;
        opt.seed = seed;
        opt.search_budget = budget;
        const SuiteResult r = run_suite(name, opt);
        return py::make_tuple(r.pass, r.report);
      },
      py::arg("name"), py::arg("jobs") = 1, py::arg("seed") = SuiteOptions{}.seed,
      py::arg("budget") = kDefaultSearchBudget,
      "Run a named cross-validation suite; returns (pass, json_lines_report).");

  m.def("suite_names", &suite_names);
}
