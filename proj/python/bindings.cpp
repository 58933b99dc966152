#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "abba/catalog.hpp"
#include "abba/classes.hpp"
#include "abba/errors.hpp"
#include "abba/io.hpp"
#include "abba/linalg.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/search.hpp"
#include "abba/similarity.hpp"
#include "abba/unitary.hpp"

namespace py = pybind11;
using namespace abba;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

Matrix<Complex> from_numpy(const ComplexArray& arr) {
  if (arr.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(arr.shape(0));
  const auto cols = static_cast<std::size_t>(arr.shape(1));
  Matrix<Complex> m(rows, cols);
  auto view = arr.unchecked<2>();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = view(i, j);
  }
  return m;
}

template <Scalar T>
ComplexArray to_numpy(const Matrix<T>& m) {
  ComplexArray arr({m.rows(), m.cols()});
  auto view = arr.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = to_complex(m(i, j));
  }
  return arr;
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

TolerancePolicy make_tol(double rank_tol, double residual_tol, double max_condition) {
  TolerancePolicy t{rank_tol, residual_tol, max_condition};
  t.validate();
  return t;
}

// Runs f on the float matrix, or on its exact image when `exact` is set.
// Doubles convert to Gaussian rationals without rounding.
template <class F>
auto dispatch(const ComplexArray& arr, bool exact, F&& f) {
  const Matrix<Complex> m = from_numpy(arr);
  if (exact) return f(convert<Exact>(m));
  return f(m);
}

template <class F>
auto dispatch2(const ComplexArray& a, const ComplexArray& b, bool exact, F&& f) {
  const Matrix<Complex> ma = from_numpy(a);
  const Matrix<Complex> mb = from_numpy(b);
  if (exact) return f(convert<Exact>(ma), convert<Exact>(mb));
  return f(ma, mb);
}

template <Scalar T>
py::dict certificate_dict(const SimilarityCertificate<T>& cert) {
  py::dict d;
  d["t"] = to_numpy(cert.t);
  d["residual"] = cert.check.residual;
  d["passed"] = cert.check.passed();
  d["condition"] = cert.check.condition ? py::cast(*cert.check.condition) : py::none();
  d["determinant"] = cert.check.determinant ? py::cast(cert.check.determinant->to_complex()) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_abba, m) {
  m.doc() = "Similarity of AB and BA: rank sequences, certificates and unitary screens";

  // Translators run most recent first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

  m.def(
      "rank",
      [](const ComplexArray& a, bool exact, double rank_tol) {
        const auto tol = make_tol(rank_tol, 1e-10, 1e8);
        return dispatch(a, exact, [&](const auto& x) { return rank(x, tol); });
      },
      py::arg("a"), py::arg("exact") = false, py::arg("rank_tol") = 1e-10);

  m.def(
      "rank_sequence",
      [](const ComplexArray& a, bool exact, double rank_tol) {
        const auto tol = make_tol(rank_tol, 1e-10, 1e8);
        return dispatch(a, exact, [&](const auto& x) { return rank_sequence(x, tol).terms; });
      },
      py::arg("a"), py::arg("exact") = false, py::arg("rank_tol") = 1e-10);

  m.def("is_valid_rank_sequence", [](const std::vector<int>& s) { return is_valid_rank_sequence(s); });
  m.def("realize_rank_sequence", [](const std::vector<int>& s) { return to_numpy(realize_rank_sequence<Exact>(s)); });
  m.def("enumerate_tail_sequences", &enumerate_tail_sequences, py::arg("n"), py::arg("cap"));

  m.def(
      "classify",
      [](const ComplexArray& a, bool exact, double residual_tol) {
        const auto tol = make_tol(1e-10, residual_tol, 1e8);
        return to_python(dispatch(a, exact, [&](const auto& x) { return to_json(classify(x, tol)); }));
      },
      py::arg("a"), py::arg("exact") = false, py::arg("residual_tol") = 1e-10);

  m.def(
      "decide",
      [](const ComplexArray& a, const ComplexArray& b, bool exact) {
        return to_python(dispatch2(a, b, exact, [](const auto& x, const auto& y) {
          return to_json(decide_product_similarity(x, y));
        }));
      },
      py::arg("a"), py::arg("b"), py::arg("exact") = false);

  m.def(
      "find_intertwiner",
      [](const ComplexArray& m1, const ComplexArray& m2, std::uint64_t seed, int attempts, bool exact) -> py::object {
        return dispatch2(m1, m2, exact, [&](const auto& x, const auto& y) -> py::object {
          auto cert = find_intertwiner(x, y, seed, attempts);
          if (!cert) return py::none();
          return certificate_dict(*cert);
        });
      },
      py::arg("m1"), py::arg("m2"), py::arg("seed") = 0, py::arg("attempts") = kDefaultAttempts,
      py::arg("exact") = false);

  m.def(
      "construct_similarity",
      [](const ComplexArray& a, const ComplexArray& b) {
        return certificate_dict(construct_similarity_psd_ep(from_numpy(a), from_numpy(b)));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "phi_similarity",
      [](const ComplexArray& x, const ComplexArray& y, std::uint64_t seed, bool exact) {
        return dispatch2(x, y, exact, [&](const auto& p, const auto& q) {
          return certificate_dict(phi_similarity(p, q, seed));
        });
      },
      py::arg("x"), py::arg("y"), py::arg("seed") = 0, py::arg("exact") = false);

  m.def(
      "word_trace_screen",
      [](const ComplexArray& m1, const ComplexArray& m2, std::size_t max_len, bool exact) {
        return to_python(dispatch2(m1, m2, exact, [&](const auto& x, const auto& y) {
          return to_json(word_trace_screen(x, y, max_len));
        }));
      },
      py::arg("m1"), py::arg("m2"), py::arg("max_len") = kDefaultMaxWordLength, py::arg("exact") = false);

  m.def(
      "decide_unitary_2x2",
      [](const ComplexArray& m1, const ComplexArray& m2, bool exact) {
        return dispatch2(m1, m2, exact, [](const auto& x, const auto& y) { return decide_unitary_2x2(x, y); });
      },
      py::arg("m1"), py::arg("m2"), py::arg("exact") = false);

  m.def(
      "rank_one_normal_unitary",
      [](const ComplexArray& a, const ComplexArray& b) {
        const RankOneResult r = rank_one_normal_unitary(from_numpy(a), from_numpy(b));
        py::dict d;
        if (const auto* w = std::get_if<RankOneUnitaryWitness>(&r)) {
          d["kind"] = "unitary";
          d["u"] = to_numpy(w->u);
          d["residual"] = w->residual;
          d["unitarity_residual"] = w->unitarity_residual;
        } else {
          d["kind"] = "commuting";
          d["residual"] = std::get<Commuting>(r).residual;
        }
        return d;
      },
      py::arg("a"), py::arg("b"));

  m.def("catalog_names", [] {
    std::vector<std::string> names;
    for (const auto& f : catalog()) names.push_back(f.name);
    return names;
  });

  m.def(
      "fixture",
      [](const std::string& name, const std::string& backend) {
        const auto f = find_fixture(name);
        if (!f) throw py::key_error("unknown fixture '" + name + "'");
        if (backend != "exact" && backend != "float") throw py::value_error("backend must be exact or float");
        py::dict d = to_python(to_json(*f, backend == "exact" ? Backend::exact : Backend::floating));
        py::dict mats;
        for (const auto& [key, mat] : f->matrices) mats[py::str(key)] = to_numpy(mat);
        d["arrays"] = mats;
        return d;
      },
      py::arg("name"), py::arg("backend") = "exact");

  m.def(
      "search",
      [](const std::string& family, std::size_t n, std::size_t trials, std::uint64_t seed, std::optional<std::size_t> rank,
         std::optional<std::size_t> max_rank, bool exact) {
        SearchSpec spec;
        spec.family = parse_family(family);
        spec.n = n;
        spec.trials = trials;
        spec.seed = seed;
        spec.backend = exact ? Backend::exact : Backend::floating;
        if (rank && max_rank) throw py::value_error("rank and max_rank are mutually exclusive");
        if (rank) spec.rank = {RankConstraint::Kind::exactly, *rank};
        if (max_rank) spec.rank = {RankConstraint::Kind::at_most, *max_rank};
        return to_python(to_json(search_counterexample(spec)));
      },
      py::arg("family"), py::arg("n"), py::arg("trials") = 500, py::arg("seed") = 0, py::arg("rank") = py::none(),
      py::arg("max_rank") = py::none(), py::arg("exact") = true);

  m.def("minimal_counterexample_analysis", &minimal_counterexample_analysis, py::arg("n") = 4, py::arg("cap") = 2,
        py::arg("require_distinct") = true);

  m.def(
      "load_matrix",
      [](const std::string& path) {
        return std::visit([](const auto& x) { return to_numpy(x); }, read_matrix_file(path));
      },
      py::arg("path"));
}
