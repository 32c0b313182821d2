#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latmass/bruinier.hpp"
#include "latmass/lattice.hpp"
#include "latmass/report.hpp"

namespace py = pybind11;
using namespace latmass;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(r.num().str())), py::int_(py::str(r.den().str())));
}

py::dict record_dict(const ReportRecord& r) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(nlohmann::json(r).dump()).cast<py::dict>();
}

}  // namespace

PYBIND11_MODULE(_latmass, m) {
  m.doc() = "Exact verifier for nonfreeness of symmetric Hilbert modular form algebras";

  m.def("kronecker", py::overload_cast<std::int64_t, std::int64_t>(&kronecker), py::arg("a"), py::arg("n"));
  m.def(
      "hilbert_symbol",
      [](std::int64_t a, std::int64_t b, std::int64_t p) {
        const Place v = p == 0 ? Place::infinity() : Place::prime(p);
        return hilbert_symbol(Rational(a), Rational(b), v);
      },
      py::arg("a"), py::arg("b"), py::arg("p"), "Hilbert symbol (a,b)_p; p = 0 selects the real place.");

  m.def(
      "invariant_factors",
      [](std::int64_t d) {
        std::vector<std::string> out;
        for (const auto& x : invariant_factors(build_L(make_discriminant_spec(d)))) out.push_back(x.str());
        return out;
      },
      py::arg("d"));
  m.def(
      "two_adic_symbol", [](std::int64_t d) { return two_adic_symbol(build_L(make_discriminant_spec(d))).str(); },
      py::arg("d"));

  m.def(
      "ldata",
      [](std::int64_t D) {
        const LData l = compute_ldata(D);
        py::dict out;
        out["D"] = l.D;
        out["B2chi"] = to_fraction(l.B2chi);
        out["q"] = to_fraction(l.q);
        out["zetaKm1"] = to_fraction(l.zetaKm1);
        out["lvalue"] = render_lvalue(l);
        return out;
      },
      py::arg("D"));
  m.def("K_prime", [](std::int64_t p) { return to_fraction(K_prime(p)); }, py::arg("p"));
  m.def("zeta_siegel_oracle", [](std::int64_t D) { return to_fraction(zeta_siegel_oracle(D)); }, py::arg("D"));

  m.def(
      "verify",
      [](std::int64_t d, const std::string& mode) {
        return record_dict(make_record(verdict(make_discriminant_spec(d), mode_from_string(mode))));
      },
      py::arg("d"), py::arg("mode") = "exact", "Report record for one d as a dict.");
  m.def(
      "scan",
      [](std::int64_t lo, std::int64_t hi, const std::string& mode, unsigned jobs) {
        std::vector<Verdict> vs;
        {
          py::gil_scoped_release release;
          vs = scan(lo, hi, mode_from_string(mode), jobs);
        }
        py::list out;
        for (const auto& v : vs) out.append(record_dict(make_record(v)));
        return out;
      },
      py::arg("d_min"), py::arg("d_max"), py::arg("mode") = "exact", py::arg("jobs") = 1);

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
