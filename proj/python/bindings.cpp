#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shabound/pipeline.hpp"

namespace py = pybind11;
using namespace shabound;

namespace {

py::object to_python(const Json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

Json from_python(const py::object& o) {
  py::object dumps = py::module_::import("json").attr("dumps");
  return parse_json_text(py::cast<std::string>(dumps(o)), "input");
}

py::int_ to_int(const Int& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(n.get_str().c_str(), nullptr, 10));
}

Int from_int(const py::int_& n) { return Int(py::cast<std::string>(py::str(static_cast<py::handle>(n)))); }

std::vector<Int> from_ints(const std::vector<py::int_>& xs) {
  std::vector<Int> out;
  for (const auto& x : xs) out.push_back(from_int(x));
  return out;
}

AnalyzeRequest request(const py::object& curve, const py::object& point, unsigned p,
                       const py::object& second_kernel) {
  AnalyzeRequest req;
  req.curve = parse_curve(from_python(curve));
  req.point = parse_point(from_python(point));
  req.p = p;
  if (!second_kernel.is_none()) req.second_kernel = parse_poly(from_python(second_kernel), "second_kernel");
  return req;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Descent invariants and Selmer/Sha bounds for rational p-isogenies";

  static PyObject* validation =
      py::exception<ValidationError>(m, "ValidationError", PyExc_ValueError).inc_ref().ptr();
  static PyObject* incomplete =
      py::exception<IncompleteFactorization>(m, "IncompleteFactorization", PyExc_RuntimeError).inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const ValidationError& err) {
      PyErr_SetString(validation, err.what());
    } catch (const UnreachableCusp& err) {
      PyErr_SetString(validation, err.what());
    } catch (const HypothesisViolated& err) {
      PyErr_SetString(validation, err.what());
    } catch (const SingularModel& err) {
      PyErr_SetString(validation, err.what());
    } catch (const IncompleteFactorization& err) {
      PyErr_SetString(incomplete, err.what());
    }
  });

  m.def(
      "analyze",
      [](const py::object& curve, const py::object& point, unsigned p, const py::object& second_kernel) {
        const AnalyzeRequest req = request(curve, point, p, second_kernel);
        Json out;
        {
          py::gil_scoped_release release;
          out = run_analyze(req, FactorBudget::from_env());
        }
        return to_python(out);
      },
      py::arg("curve"), py::arg("point"), py::arg("p") = 5, py::arg("second_kernel") = py::none(),
      "Full report for a curve with a rational point of order p.");

  m.def(
      "sandwich",
      [](const py::object& curve, const py::object& point, unsigned p) {
        return to_python(run_sandwich(request(curve, point, p, py::none()), FactorBudget::from_env()));
      },
      py::arg("curve"), py::arg("point"), py::arg("p") = 5);

  m.def(
      "matrix",
      [](unsigned p, const std::vector<py::int_>& s1, const std::vector<py::int_>& s2) {
        return to_python(run_matrix(p, from_ints(s1), from_ints(s2)));
      },
      py::arg("p"), py::arg("s1"), py::arg("s2"));

  m.def(
      "bounds",
      [](std::int64_t d, std::int64_t cp, bool totally_imaginary, bool contains_zeta_p, std::int64_t s1,
         std::int64_t s2, std::int64_t m, std::int64_t m_hat, std::optional<std::int64_t> dim_phi) {
        BoundsRequest req;
        req.field = {d, cp, totally_imaginary, contains_zeta_p};
        req.s1 = s1;
        req.s2 = s2;
        req.m = m;
        req.m_hat = m_hat;
        req.dim_phi = dim_phi;
        return to_python(run_bounds(req));
      },
      py::arg("d") = 4, py::arg("cp") = 0, py::arg("totally_imaginary") = true, py::arg("contains_zeta_p") = true,
      py::arg("s1") = 0, py::arg("s2") = 0, py::arg("m") = 0, py::arg("m_hat") = 0, py::arg("dim_phi") = py::none());

  m.def(
      "budget",
      [](std::int64_t p, std::int64_t k, std::int64_t n, std::int64_t deg_h) {
        return to_python(run_budget(p, k, n, deg_h));
      },
      py::arg("p"), py::arg("k"), py::arg("n"), py::arg("D"));

  m.def(
      "search",
      [](const py::dict& config, unsigned jobs) {
        const Json cfg = from_python(config);
        Json out;
        {
          py::gil_scoped_release release;
          out = run_search(cfg, jobs, FactorBudget::from_env());
        }
        return to_python(out);
      },
      py::arg("config"), py::arg("jobs") = 1, "Scan a Tate normal form family; config keys as in the CLI.");

  m.def("is_prime", [](const py::int_& n) { return is_prime(from_int(n)); });

  m.def(
      "factor",
      [](const py::int_& n) {
        const Factorization f = factor_complete(from_int(n), FactorBudget::from_env());
        py::list factors;
        for (const auto& pp : f.factors) factors.append(py::make_tuple(to_int(pp.prime), pp.exponent));
        return py::make_tuple(f.sign, factors);
      },
      "(sign, [(prime, exponent), ...])");

  m.def(
      "character",
      [](const py::int_& ell, unsigned p, const py::int_& a) {
        return ResidueCharacter(from_int(ell), p)(from_int(a));
      },
      py::arg("ell"), py::arg("p"), py::arg("a"));

  m.def(
      "crt",
      [](const std::vector<std::pair<py::int_, py::int_>>& congruences) {
        std::vector<Congruence> cs;
        for (const auto& [r, mod] : congruences) cs.push_back({from_int(r), from_int(mod)});
        return to_int(crt_solve(cs));
      },
      "Least nonnegative solution of [(residue, modulus), ...].");
}
