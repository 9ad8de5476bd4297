// Python bindings. Exact values cross the boundary as fractions.Fraction,
// balls as the Ball class, reports as lists of dicts.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mahlerkit/algnum/height.hpp"
#include "mahlerkit/algnum/mahler.hpp"
#include "mahlerkit/algnum/polynomial.hpp"
#include "mahlerkit/bounds/bounds.hpp"
#include "mahlerkit/cli/cli.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/matrixlab/audit.hpp"
#include "mahlerkit/matrixlab/lemmas.hpp"
#include "mahlerkit/matrixlab/logmatrix.hpp"
#include "mahlerkit/search/search.hpp"

namespace py = pybind11;
using namespace mahlerkit;

namespace {

Rational to_rational(const py::handle& value) { return parse_rational(py::str(value).cast<std::string>()); }

py::object to_fraction(const Rational& value) {
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(mahlerkit::to_string(value));
}

py::int_ to_int(const Integer& value) { return py::int_(py::str(value.get_str())); }

py::list report_list(const Report& report) {
  py::list out;
  for (const auto& row : report.rows) {
    py::dict d;
    d["name"] = row.name;
    d["lhs"] = row.lhs;
    d["rhs"] = row.rhs;
    d["relation"] = row.relation;
    d["pass"] = row.pass;
    if (!row.note.empty()) d["note"] = row.note;
    out.append(d);
  }
  return out;
}

matrixlab::RationalMatrix to_matrix(const std::vector<std::vector<py::object>>& rows) {
  std::vector<std::vector<Rational>> values;
  for (const auto& row : rows) {
    auto& out = values.emplace_back();
    for (const auto& x : row) out.push_back(to_rational(x));
  }
  return matrixlab::RationalMatrix(values);
}

py::list matrix_list(const matrixlab::RationalMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_fraction(m(i, j)));
    out.append(row);
  }
  return out;
}

algnum::IntPolynomial to_polynomial(const py::object& f) {
  if (py::isinstance<py::str>(f)) return algnum::IntPolynomial::parse(f.cast<std::string>());
  std::vector<Integer> coefficients;
  for (const auto& c : f) coefficients.push_back(parse_integer(py::str(c).cast<std::string>()));
  return algnum::IntPolynomial(std::move(coefficients));
}

bounds::BoundContext context(long m, long n, long r, long D, const py::object& h, const py::object& h1,
                             const py::object& h2) {
  bounds::BoundContext ctx;
  ctx.m = m;
  ctx.n = n;
  ctx.r = r;
  ctx.D = D;
  if (!h.is_none()) ctx.h = to_rational(h);
  if (!h1.is_none()) ctx.h1 = to_rational(h1);
  if (!h2.is_none()) ctx.h2 = to_rational(h2);
  return ctx;
}

py::dict bound_dict(const bounds::BoundResult& b) {
  py::dict d;
  d["formula"] = b.formula;
  d["log_value"] = b.log_value;
  d["branch"] = b.branch;
  d["status"] = bounds::to_string(b.status);
  d["hypotheses"] = report_list(b.hypotheses);
  return d;
}

py::list scan_list(const std::vector<search::ScanRecord>& records) {
  py::list out;
  for (const auto& r : records) {
    py::dict d;
    d["key"] = r.key;
    d["certified"] = r.certified;
    if (r.certified) {
      d["value"] = r.value;
      d["nearest"] = to_int(r.nearest);
      d["distance"] = r.distance;
      d["exponent"] = r.exponent ? py::cast(*r.exponent) : py::none();
      d["flag"] = r.flag;
    } else {
      d["error"] = r.error;
    }
    d["precision"] = r.precision_used;
    out.append(d);
  }
  return out;
}

search::ScanOptions scan_options(const py::object& exponent_ref, unsigned jobs, Precision start) {
  search::ScanOptions options;
  options.exponent_ref = to_rational(exponent_ref);
  options.jobs = jobs;
  options.policy.start = start;
  return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified heights, Mahler measures and linear-form bounds";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", base);
  py::register_exception<PrecisionBudgetExceeded>(m, "PrecisionBudgetExceeded", base);

  py::class_<RealBall>(m, "Ball")
      .def_property_readonly("precision", &RealBall::precision)
      .def_property_readonly("lower", [](const RealBall& b) { return b.lower().to_double(); })
      .def_property_readonly("upper", [](const RealBall& b) { return b.upper().to_double(); })
      .def("contains", [](const RealBall& b, const py::object& q) { return b.contains(to_rational(q)); })
      .def("overlaps", &RealBall::overlaps)
      .def("is_positive", &RealBall::is_positive)
      .def("to_string", &RealBall::to_string, py::arg("digits") = 17)
      .def("__float__", &RealBall::to_double)
      .def("__repr__", [](const RealBall& b) { return "Ball(" + b.to_string() + ")"; });

  m.def("naive_height", [](const py::object& x) { return to_int(algnum::naive_height(to_rational(x))); });
  m.def("height", [](const py::object& x, Precision prec) { return algnum::height_rational(to_rational(x), prec); },
        py::arg("value"), py::arg("precision") = kDefaultPrecision);
  m.def(
      "projective_height",
      [](const std::vector<py::object>& coords, Precision prec) {
        std::vector<Rational> values;
        for (const auto& c : coords) values.push_back(to_rational(c));
        return algnum::projective_height_rational(algnum::ProjectivePoint(values), prec);
      },
      py::arg("coordinates"), py::arg("precision") = kDefaultPrecision);
  m.def(
      "mahler_measure",
      [](const py::object& f, Precision prec) { return algnum::mahler_measure_roots(to_polynomial(f), prec); },
      py::arg("polynomial"), py::arg("precision") = 128);
  m.def(
      "mahler_measure_integral",
      [](const py::object& f, double tolerance) {
        return algnum::mahler_measure_integral(to_polynomial(f), algnum::kDefaultQuadratureNodes, tolerance).value;
      },
      py::arg("polynomial"), py::arg("tolerance") = 1e-8);

  m.def("theta", [](long m_, long n, long r) { return to_fraction(bounds::theta(m_, n, r)); });
  m.def("kappa", [](long m_, long n, long r) { return to_fraction(bounds::kappa(m_, n, r)); });
  const auto bound_args = [](auto f) {
    return [f](long m_, long n, long r, long D, const py::object& h, const py::object& h1, const py::object& h2) {
      return bound_dict(f(context(m_, n, r, D, h, h1, h2)));
    };
  };
  m.def("phi1", bound_args([](const bounds::BoundContext& c) { return bounds::phi1(c); }), py::arg("m"),
        py::arg("n"), py::arg("r"), py::arg("D") = 1, py::arg("h") = py::none(), py::arg("h1") = py::none(),
        py::arg("h2") = py::none());
  m.def("phi2", bound_args([](const bounds::BoundContext& c) { return bounds::phi2(c); }), py::arg("m"),
        py::arg("n"), py::arg("r"), py::arg("D") = 1, py::arg("h") = py::none(), py::arg("h1") = py::none(),
        py::arg("h2") = py::none());
  m.def(
      "bound_nw",
      [](long D, const py::object& h1, const py::object& h2) {
        return bound_dict(bounds::bound_nw(context(2, 1, 1, D, py::none(), h1, h2)));
      },
      py::arg("D"), py::arg("h1"), py::arg("h2"));

  m.def("rational_rank", [](const std::vector<std::vector<py::object>>& rows) {
    return matrixlab::rational_rank(to_matrix(rows));
  });
  m.def("lemma2_factor", [](const std::vector<std::vector<py::object>>& rows, long rank) {
    const auto cert = matrixlab::lemma2_factor(to_matrix(rows), rank);
    py::dict d;
    d["row_order"] = cert.row_order;
    d["col_order"] = cert.col_order;
    d["left"] = matrix_list(cert.left);
    d["right"] = matrix_list(cert.right);
    d["permuted"] = matrix_list(cert.permuted);
    d["height_base"] = to_int(cert.height_base);
    d["checks"] = report_list(cert.checks);
    d["valid"] = cert.checks.passed();
    return d;
  });
  m.def("lic_check", [](std::size_t m_, std::size_t n, long T, long S) {
    const auto result = matrixlab::lic_check_box(matrixlab::make_lic_matrix(m_, n), T, S);
    py::dict d;
    d["pass"] = result.pass;
    d["pairs"] = result.pairs;
    d["witness"] = result.witness ? py::cast(std::make_pair(result.witness->t, result.witness->s)) : py::none();
    return d;
  });
  m.def("lemma3_count", [](std::size_t m_, std::size_t n, const std::vector<long>& t, long S) {
    const auto c = matrixlab::lemma3_count(matrixlab::make_lic_matrix(m_, n), t, S);
    py::dict d;
    d["count"] = c.count;
    d["threshold"] = to_int(c.threshold);
    d["pass"] = c.pass;
    return d;
  });
  m.def("gamma_admissibility", [](long m_, long n, long r) {
    return report_list(matrixlab::gamma_admissibility(m_, n, r));
  });
  m.def(
      "least_passing_c0",
      [](long m_, long n, long r, long D, const py::object& h1, const py::object& h2, unsigned max_log2) {
        const auto sweep = matrixlab::sweep_theorem1(m_, n, r, D, to_rational(h1), to_rational(h2),
                                                     matrixlab::doubling_sweep(max_log2));
        return sweep.least_passing ? to_fraction(*sweep.least_passing) : py::none();
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("D"), py::arg("h1"), py::arg("h2"),
      py::arg("max_log2") = 10);

  m.def(
      "scan_log",
      [](long lo, long hi, const py::object& exponent_ref, unsigned jobs, Precision start) {
        const auto options = scan_options(exponent_ref, jobs, start);
        py::gil_scoped_release release;
        auto records = search::scan_log(lo, hi, options);
        py::gil_scoped_acquire acquire;
        return scan_list(records);
      },
      py::arg("a_min"), py::arg("a_max"), py::arg("exponent_ref") = 40, py::arg("jobs") = 1,
      py::arg("precision") = 64);
  m.def(
      "scan_exp",
      [](long lo, long hi, const py::object& exponent_ref, unsigned jobs, Precision start) {
        const auto options = scan_options(exponent_ref, jobs, start);
        py::gil_scoped_release release;
        auto records = search::scan_exp(lo, hi, options);
        py::gil_scoped_acquire acquire;
        return scan_list(records);
      },
      py::arg("b_min"), py::arg("b_max"), py::arg("exponent_ref") = 40, py::arg("jobs") = 1,
      py::arg("precision") = 64);
  m.def("mahler_sequence", [](long b_max) {
    py::list out;
    for (const auto& r : search::mahler_sequence(b_max)) {
      py::dict d;
      d["b"] = r.b;
      d["a"] = to_int(r.a);
      d["difference"] = r.difference;
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  });
  m.def(
      "convergents",
      [](const std::string& name, std::size_t count) {
        const auto value = search::named_constant(name);
        if (!value) throw ParseError("unknown constant '" + name + "'");
        const auto list = search::convergents(*value, count);
        py::list out;
        for (std::size_t k = 0; k < list.numerators.size(); ++k) out.append(to_fraction(list.convergent(k)));
        return out;
      },
      py::arg("name"), py::arg("count"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  });
}
