#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdsym/eichler.hpp"

namespace py = pybind11;
using namespace mdsym;

namespace {

py::dict series_dict(const CSeries& s) {
  py::dict out;
  for (const auto& [w, c] : s.terms()) out[py::str(s.alphabet().format(w))] = c;
  return out;
}

py::dict symbol(const std::string& forms, std::int64_t p, std::int64_t q, int length, const std::string& series,
                double tol) {
  const auto h = HAssignment::parse(forms);
  IntegratorConfig cfg;
  cfg.trunc = length;
  cfg.tol = tol;
  cfg.validate();
  if (series != "D" && series != "F" && series != "E") throw DomainError("series must be D, F or E");
  CSeries s(h.alphabet_ptr(), length);
  {
    py::gil_scoped_release release;
    s = series == "D" ? build_D(h, p, q, cfg) : series == "F" ? build_F(h, p, q, cfg) : build_E(h, p, q, length);
  }
  return series_dict(s);
}

}  // namespace

PYBIND11_MODULE(_mdsym, m) {
  m.doc() = "Multiple Dedekind symbols and iterated Eichler integrals";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception<NotShuffled>(m, "NotShuffled", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("canonical", [](std::int64_t p, std::int64_t q) { return canonical(p, q).entries(); }, py::arg("p"),
        py::arg("q"), "Canonical minus continued fraction of q/p.");
  m.def(
      "evaluate",
      [](const std::vector<std::int64_t>& entries) {
        const auto pq = evaluate(CFSeq(entries));
        return std::pair{pq.p, pq.q};
      },
      py::arg("entries"), "(p, q) with q/p equal to the continued fraction.");

  m.def(
      "dedekind_symbol_length1",
      [](const std::string& form, std::int64_t p, std::int64_t q) {
        return dedekind_symbol_length1(ModularFormSpec::parse(form), p, q);
      },
      py::arg("form"), py::arg("p"), py::arg("q"));
  m.def(
      "reciprocity_law_check",
      [](int weight, std::int64_t p) {
        const auto r = reciprocity_law_check(weight, p);
        return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("discrepancy") = r.discrepancy);
      },
      py::arg("weight"), py::arg("p"));

  m.def(
      "gamma02_delta",
      [](int weight, std::int64_t p, std::int64_t q) {
        const auto z = gamma02_delta(weight, p, q);
        return py::dict(py::arg("coefficient") = z.coefficient.get_str(), py::arg("zeta_arg") = z.zeta_arg,
                        py::arg("value") = z.value());
      },
      py::arg("weight"), py::arg("p"), py::arg("q"));
  m.def("gamma02_D", &gamma02_D, py::arg("weight"), py::arg("p"), py::arg("q"));
  m.def("gamma02_F", &gamma02_F, py::arg("weight"), py::arg("p"), py::arg("q"));

  m.def("symbol", &symbol, py::arg("forms"), py::arg("p"), py::arg("q"), py::arg("length") = 2,
        py::arg("series") = "D", py::arg("tol") = 1e-12,
        "Coefficients of D, F or E at (p, q) keyed by word.");
}
