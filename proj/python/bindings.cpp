#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padic/divpoly.hpp"
#include "padic/fixtures.hpp"
#include "padic/frobenius.hpp"
#include "padic/height.hpp"
#include "padic/json_io.hpp"
#include "padic/sigma.hpp"

namespace py = pybind11;
using namespace padic;

namespace {

Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

CurveQ to_curve(const std::vector<py::object>& a) {
  if (a.size() != 5) throw InvalidArgument("a curve is given by five a-invariants");
  return CurveQ::from_ainvariants(to_integer(a[0]), to_integer(a[1]), to_integer(a[2]),
                                  to_integer(a[3]), to_integer(a[4]));
}

// Accepts ints, fractions.Fraction and "num/den" strings.
Rational to_rational(const py::handle& h) {
  Rational q(py::str(h).cast<std::string>());
  q.canonicalize();
  return q;
}

RationalPoint to_point(const std::pair<py::object, py::object>& xy) {
  return RationalPoint::from_affine(to_rational(xy.first), to_rational(xy.second));
}

py::dict height_dict(const HeightResult& r) {
  const PadicNumber& v = r.value;
  py::list digs;
  if (!v.is_zero())
    for (const Integer& d : v.digits()) digs.append(to_py(d));
  const HeightDiagnostics& d = r.diagnostics;
  py::dict diag;
  diag["n1"] = to_py(d.ledger.n1);
  diag["n"] = to_py(d.ledger.n);
  diag["m"] = to_py(d.ledger.m);
  diag["M_prime"] = d.ledger.M_prime;
  diag["alpha"] = to_py(d.triple.alpha);
  diag["beta"] = to_py(d.triple.beta);
  diag["d"] = to_py(d.triple.d);
  diag["log_argument"] = to_py(d.log_argument);
  diag["log_value"] = to_py(d.log_value);
  diag["e2"] = d.e2 ? py::object(to_py(*d.e2)) : py::none();
  py::dict out;
  out["p"] = to_py(v.p());
  out["valuation"] = v.is_zero() ? v.absolute_precision() : v.valuation();
  out["precision"] = v.absolute_precision();
  out["digits"] = digs;
  out["text"] = v.to_string();
  out["diagnostics"] = diag;
  return out;
}

}  // namespace

PYBIND11_MODULE(padic_height, m) {
  m.doc() = "p-adic heights on elliptic curves over Q";

  static py::exception<Error> padic_error(m, "PadicError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(padic_error.ptr())(e.what());
      err.attr("name") = e.name();
      PyErr_SetObject(padic_error.ptr(), err.ptr());
    }
  });

  m.def(
      "count_points",
      [](const std::vector<py::object>& curve, std::uint64_t p) {
        return to_py(count_points(to_curve(curve), p).n1);
      },
      py::arg("curve"), py::arg("p"));

  m.def(
      "e2",
      [](const std::vector<py::object>& curve, const py::object& p, int prec, bool column_trick) {
        return to_py(compute_e2(to_curve(curve), to_integer(p), prec, column_trick).value());
      },
      py::arg("curve"), py::arg("p"), py::arg("prec"), py::arg("column_trick") = false);

  m.def(
      "frobenius_matrix",
      [](const std::vector<py::object>& curve, const py::object& p, int prec) {
        const CurveQ E = to_curve(curve);
        const Integer pp = to_integer(p);
        auto [A, B] = short_model_residues(E, pp, prec + 2);
        FrobeniusMatrix F = kedlaya_frobenius_matrix(pp, A, B, prec);
        return py::make_tuple(py::make_tuple(to_py(F.a), to_py(F.b)),
                              py::make_tuple(to_py(F.c), to_py(F.d)));
      },
      py::arg("curve"), py::arg("p"), py::arg("prec"));

  m.def(
      "sigma",
      [](const std::vector<py::object>& curve, const py::object& p, int prec,
         const py::object& e2) {
        const CurveQ E = to_curve(curve);
        const Integer pp = to_integer(p);
        const SigmaSeries s = [&] {
          if (!e2.is_none())
            return compute_sigma(E, pp, prec,
                                 ZModPN(make_modulus(pp, std::max(prec - 3, 1)), to_integer(e2)));
          if (prec < 4) return compute_sigma(E, pp, prec, nullptr);
          return compute_sigma(E, pp, prec, compute_e2(E, pp, prec - 3));
        }();
        py::list out;
        for (int k = 1; k < prec; ++k) out.append(py::make_tuple(to_py(s.coeff(k)), prec - k));
        return out;
      },
      py::arg("curve"), py::arg("p"), py::arg("prec"), py::arg("e2") = py::none(),
      "[(c_k, e_k)] for k = 1 .. prec-1: c_k is the t^k coefficient modulo p^e_k.");

  m.def(
      "multiple",
      [](const std::vector<py::object>& curve, const std::pair<py::object, py::object>& point,
         std::uint64_t mult, const py::object& modulus) {
        DivPolyContext ctx(to_curve(curve), to_point(point), to_integer(modulus));
        MultipleCoords mc = multiple_coords(ctx, mult);
        return py::make_tuple(to_py(mc.alpha), to_py(mc.beta), to_py(mc.d));
      },
      py::arg("curve"), py::arg("point"), py::arg("m"), py::arg("modulus"),
      "(alpha, beta, d) of m Q modulo R; beta and d share an undetermined sign.");

  m.def(
      "height",
      [](const std::vector<py::object>& curve, const std::pair<py::object, py::object>& point,
         const py::object& p, int prec, const py::object& tamagawa_lcm, bool mst,
         bool column_trick) {
        HeightJob job;
        job.E = to_curve(curve);
        job.P = to_point(point);
        job.p = to_integer(p);
        job.M = prec;
        job.n2 = to_integer(tamagawa_lcm);
        job.normalization = mst ? Normalization::MST : Normalization::Standard;
        job.column_trick = column_trick;
        HeightResult r;
        {
          py::gil_scoped_release release;
          r = padic_height(job);
        }
        return height_dict(r);
      },
      py::arg("curve"), py::arg("point"), py::arg("p"), py::arg("prec"),
      py::arg("tamagawa_lcm") = 1, py::arg("mst_normalization") = false,
      py::arg("column_trick") = false);

  m.def(
      "iwasawa_log",
      [](const py::object& u, const py::object& p, int prec) {
        return to_py(iwasawa_log(ZModPN(make_modulus(to_integer(p), prec), to_integer(u))).value());
      },
      py::arg("u"), py::arg("p"), py::arg("prec"));

  m.def(
      "run_golden_suite",
      [](const std::string& path) {
        GoldenReport r = run_golden_suite(path);
        py::list failures;
        for (const GoldenFailure& f : r.failures) {
          py::dict d;
          d["label"] = f.label;
          d["stage"] = f.stage;
          d["index"] = f.index;
          d["expected"] = f.expected;
          d["actual"] = f.actual;
          failures.append(d);
        }
        py::dict out;
        out["records"] = r.records;
        out["checks"] = r.checks;
        out["failures"] = failures;
        return out;
      },
      py::arg("path"));
}
