#include "abba/classes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "abba/linalg.hpp"

namespace abba {

namespace {

template <Scalar T>
void require_square(const Matrix<T>& m, const char* what) {
  if (!m.is_square()) throw DimensionError(std::string(what) + " requires a square matrix, got " + m.shape());
}

std::string describe(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

template <Scalar T>
std::string describe_vector(const Matrix<T>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (i) os << ", ";
    if constexpr (is_exact_v<T>) {
      os << v(i, 0).str();
    } else {
      os << v(i, 0).real() << (v(i, 0).imag() < 0 ? "-" : "+") << std::abs(v(i, 0).imag()) << "i";
    }
  }
  os << "]";
  return os.str();
}

// Signs (-1)^k c_k of the characteristic polynomial coefficients: the sums of
// k x k principal minors e_k.
std::vector<mpq_class> principal_minor_sums(const Matrix<Exact>& m) {
  const auto coeffs = characteristic_polynomial(m);
  std::vector<mpq_class> e;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const mpq_class c = coeffs[k].real();
    e.push_back(k % 2 == 0 ? c : mpq_class(-c));
  }
  return e;
}

double min_hermitian_eigenvalue(const Matrix<Complex>& m) {
  const auto ev = eigenvalues(real_part(m));
  double lo = 0.0;
  bool first = true;
  for (const auto& z : ev) {
    if (first || z.real() < lo) lo = z.real();
    first = false;
  }
  return lo;
}

// ||m v||^2 - ||m^* v||^2 = v^*(m^*m - m m^*)v; some e_j, e_j + e_k or
// e_j + i e_k makes this nonzero whenever m is not normal.
template <Scalar T>
std::string normality_witness(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  const Matrix<T> madj = m.adjoint();
  const Matrix<T> h = madj * m - m * madj;
  double best = -1.0;
  Matrix<T> best_v(n, 1);
  auto consider = [&](const Matrix<T>& v) {
    const double q = std::abs(to_complex((v.adjoint() * h * v)(0, 0)));
    if (q > best) {
      best = q;
      best_v = v;
    }
  };
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<T> v(n, 1);
    v(j, 0) = T(1);
    consider(v);
    for (std::size_t k = j + 1; k < n; ++k) {
      Matrix<T> w = v;
      w(k, 0) = T(1);
      consider(w);
      w(k, 0) = from_int<T>(0, 1);
      consider(w);
    }
  }
  const double mv = frobenius_norm(Matrix<T>(m * best_v));
  const double madjv = frobenius_norm(Matrix<T>(madj * best_v));
  return "v = " + describe_vector(best_v) + ": |m v| = " + describe(mv) + ", |m* v| = " + describe(madjv);
}

template <Scalar T>
std::string psd_witness(const Matrix<T>& m) {
  if constexpr (is_exact_v<T>) {
    const auto e = principal_minor_sums(m);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (sgn(e[k]) < 0) {
        return "sum of " + std::to_string(k + 1) + "x" + std::to_string(k + 1) +
               " principal minors is " + e[k].get_str();
      }
    }
    return "no negative principal-minor sum";
  } else {
    return "smallest eigenvalue " + describe(min_hermitian_eigenvalue(m));
  }
}

}  // namespace

template <Scalar T>
Matrix<T> real_part(const Matrix<T>& m) {
  require_square(m, "real_part");
  Matrix<T> h = m + m.adjoint();
  if constexpr (is_exact_v<T>) {
    h *= Exact(mpq_class(1, 2));
  } else {
    h *= Complex(0.5);
  }
  return h;
}

template <Scalar T>
bool is_hermitian(const Matrix<T>& m, const TolerancePolicy& tol) {
  require_square(m, "is_hermitian");
  if constexpr (is_exact_v<T>) {
    return m == m.adjoint();
  } else {
    return frobenius_norm(Matrix<T>(m - m.adjoint())) <= tol.residual_tol * frobenius_norm(m);
  }
}

template <Scalar T>
bool is_normal(const Matrix<T>& m, const TolerancePolicy& tol) {
  require_square(m, "is_normal");
  const Matrix<T> madj = m.adjoint();
  const Matrix<T> lhs = m * madj;
  const Matrix<T> rhs = madj * m;
  if constexpr (is_exact_v<T>) {
    return lhs == rhs;
  } else {
    const double scale = frobenius_norm(m);
    return frobenius_norm(Matrix<T>(lhs - rhs)) <= tol.residual_tol * scale * scale;
  }
}

template <Scalar T>
bool is_psd(const Matrix<T>& m, const TolerancePolicy& tol) {
  if (!is_hermitian(m, tol)) return false;
  if constexpr (is_exact_v<T>) {
    const auto e = principal_minor_sums(m);
    return std::all_of(e.begin(), e.end(), [](const mpq_class& x) { return sgn(x) >= 0; });
  } else {
    if (m.rows() == 0) return true;
    return min_hermitian_eigenvalue(m) >= -tol.residual_tol * frobenius_norm(m);
  }
}

template <Scalar T>
bool is_ep(const Matrix<T>& m, const TolerancePolicy& tol) {
  require_square(m, "is_ep");
  return rank(hstack(m, m.adjoint()), tol) == rank(m, tol);
}

template <Scalar T>
bool realpart_psd_same_rank(const Matrix<T>& m, const TolerancePolicy& tol) {
  const Matrix<T> h = real_part(m);
  return is_psd(h, tol) && rank(h, tol) == rank(m, tol);
}

template <Scalar T>
ClassReport classify(const Matrix<T>& m, const TolerancePolicy& tol) {
  require_square(m, "classify");
  ClassReport report;
  report.rank = rank(m, tol);
  report.psd = is_psd(m, tol);
  report.hermitian = report.psd || is_hermitian(m, tol);
  report.normal = report.hermitian || is_normal(m, tol);
  report.ep = report.normal || is_ep(m, tol);
  report.realpart_psd_same_rank = realpart_psd_same_rank(m, tol);

  if (!report.hermitian) {
    std::size_t bi = 0, bj = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = i; j < m.cols(); ++j) {
        const double d = std::abs(to_complex(m(i, j)) - std::conj(to_complex(m(j, i))));
        if (d > worst) {
          worst = d;
          bi = i;
          bj = j;
        }
      }
    }
    report.witnesses["hermitian"] = "entry (" + std::to_string(bi) + "," + std::to_string(bj) +
                                    ") differs from the conjugate of entry (" + std::to_string(bj) + "," +
                                    std::to_string(bi) + ") by " + describe(worst);
  }
  if (!report.normal) report.witnesses["normal"] = normality_witness(m);
  if (report.hermitian && !report.psd) report.witnesses["psd"] = psd_witness(m);
  if (!report.psd && !report.hermitian) report.witnesses["psd"] = "not Hermitian";
  if (!report.ep) {
    report.witnesses["ep"] = "rank([m | m*]) = " + std::to_string(rank(hstack(m, m.adjoint()), tol)) +
                             " exceeds rank(m) = " + std::to_string(report.rank);
  }
  if (!report.realpart_psd_same_rank) {
    const Matrix<T> h = real_part(m);
    if (!is_psd(h, tol)) {
      report.witnesses["realpart_psd_same_rank"] = "real part is not PSD: " + psd_witness(h);
    } else {
      report.witnesses["realpart_psd_same_rank"] = "rank of real part is " + std::to_string(rank(h, tol)) +
                                                   ", rank(m) is " + std::to_string(report.rank);
    }
  }
  return report;
}

template <Scalar T>
EPDecomposition<T> ep_decomposition(const Matrix<T>& m, const TolerancePolicy& tol) {
  require_square(m, "ep_decomposition");
  if (!is_ep(m, tol)) throw HypothesisError("ep_decomposition: matrix is not EP");
  const std::size_t n = m.rows();
  const std::size_t r = rank(m, tol);
  EPDecomposition<T> out;
  out.r = r;
  if constexpr (is_exact_v<T>) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((i >= r || j >= r) && !m(i, j).is_zero()) {
          throw UnsupportedError(
              "ep_decomposition: exact input must already be of the form C (+) 0; convert to float for "
              "general EP matrices");
        }
      }
    }
    out.v = Matrix<T>::identity(n);
    out.c = m.block(0, 0, r, r);
  } else {
    out.v = orthonormal_completion(orthonormal_range_basis(m, tol));
    const Matrix<T> aligned = out.v.adjoint() * m * out.v;
    out.c = aligned.block(0, 0, r, r);
    Matrix<T> trailing = aligned;
    trailing.set_block(0, 0, Matrix<T>(r, r));
    if (frobenius_norm(trailing) > tol.residual_tol * std::max(1.0, frobenius_norm(m))) {
      throw HypothesisError("ep_decomposition: trailing blocks did not vanish; matrix is not EP to tolerance");
    }
  }
  return out;
}

template <Scalar T>
std::optional<ColumnInclusionFactor<T>> column_inclusion_factor(const Matrix<T>& a, std::size_t r,
                                                                 const TolerancePolicy& tol) {
  require_square(a, "column_inclusion_factor");
  const std::size_t n = a.rows();
  if (r > n) throw std::invalid_argument("column_inclusion_factor: split index exceeds matrix size");
  if (r == 0 || r == n) return ColumnInclusionFactor<T>{Matrix<T>(r, n - r), 0.0};
  const Matrix<T> a11 = a.block(0, 0, r, r);
  const Matrix<T> a12 = a.block(0, r, r, n - r);
  auto x = solve_linear(a11, a12, tol);
  if (!x) return std::nullopt;
  const double residual = frobenius_norm(Matrix<T>(a11 * *x - a12));
  return ColumnInclusionFactor<T>{std::move(*x), residual};
}

#define ABBA_INSTANTIATE(T)                                                                            \
  template Matrix<T> real_part<T>(const Matrix<T>&);                                                   \
  template bool is_hermitian<T>(const Matrix<T>&, const TolerancePolicy&);                             \
  template bool is_normal<T>(const Matrix<T>&, const TolerancePolicy&);                                \
  template bool is_psd<T>(const Matrix<T>&, const TolerancePolicy&);                                   \
  template bool is_ep<T>(const Matrix<T>&, const TolerancePolicy&);                                    \
  template bool realpart_psd_same_rank<T>(const Matrix<T>&, const TolerancePolicy&);                   \
  template ClassReport classify<T>(const Matrix<T>&, const TolerancePolicy&);                          \
  template EPDecomposition<T> ep_decomposition<T>(const Matrix<T>&, const TolerancePolicy&);           \
  template std::optional<ColumnInclusionFactor<T>> column_inclusion_factor<T>(const Matrix<T>&,        \
                                                                              std::size_t,             \
                                                                              const TolerancePolicy&);

ABBA_INSTANTIATE(Exact)
ABBA_INSTANTIATE(Complex)
#undef ABBA_INSTANTIATE

}  // namespace abba
