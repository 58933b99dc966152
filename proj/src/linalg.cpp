#include "abba/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace abba {

void TolerancePolicy::validate() const {
  if (!(rank_rel_tol > 0.0) || !(residual_tol > 0.0) || !(max_condition > 0.0)) {
    throw std::invalid_argument("tolerance policy fields must be strictly positive");
  }
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// Exact backend

struct EchelonForm {
  Matrix<Exact> reduced;
  std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan to reduced row echelon form with unit pivots.
EchelonForm reduced_row_echelon(Matrix<Exact> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const Exact inv = Exact(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Exact f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

// Bareiss recurrence: every stored entry is a minor of the input, which keeps
// intermediate sizes bounded. Returns rank; `det` receives the determinant
// when the matrix is square.
std::size_t bareiss(Matrix<Exact> m, Exact* det) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Exact prev(1);
  std::size_t r = 0;
  bool negate = false;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      negate = !negate;
    }
    const Exact pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Exact lead = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = (pivot * m(i, j) - lead * m(r, j)) / prev;
      }
      m(i, c) = Exact(0);
    }
    prev = pivot;
    ++r;
  }
  if (det != nullptr) {
    if (rows == 0) {
      *det = Exact(1);
    } else if (r < rows) {
      *det = Exact(0);
    } else {
      *det = negate ? -m(rows - 1, cols - 1) : m(rows - 1, cols - 1);
    }
  }
  return r;
}

// Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k.
std::vector<Exact> faddeev_leverrier(const Matrix<Exact>& a) {
  const std::size_t n = a.rows();
  std::vector<Exact> coeffs(n + 1);
  coeffs[0] = Exact(1);
  Matrix<Exact> m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs[k - 1];
    const Exact tr = (a * m).trace();
    coeffs[k] = -tr / Exact(static_cast<long>(k));
  }
  return coeffs;
}

// ---------------------------------------------------------------------------
// Float backend

Matrix<Complex> column_of(const Matrix<Complex>& m, std::size_t j) { return m.column(j); }

std::size_t numerical_rank(const SingularValueDecomposition& svd, std::size_t rows, std::size_t cols,
                           const TolerancePolicy& tol) {
  const double cutoff = rank_cutoff(svd.sigma, rows, cols, tol);
  const auto above = static_cast<std::size_t>(
      std::count_if(svd.sigma.begin(), svd.sigma.end(), [&](double s) { return s > cutoff; }));
  return std::min(above, svd.u.cols());
}

Complex lu_determinant(Matrix<Complex> m) {
  const std::size_t n = m.rows();
  Complex det(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    }
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

void reduce_to_hessenberg(Matrix<Complex>& h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    std::vector<Complex> v(len);
    double xnorm = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = h(k + 1 + i, k);
      xnorm += std::norm(v[i]);
    }
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex phase = std::abs(v[0]) == 0.0 ? Complex(1.0) : v[0] / std::abs(v[0]);
    v[0] += phase * xnorm;
    double vnorm = 0.0;
    for (const auto& x : v) vnorm += std::norm(x);
    vnorm = std::sqrt(vnorm);
    for (auto& x : v) x /= vnorm;
    // H <- (I - 2vv*) H (I - 2vv*)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s(0.0);
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= 2.0 * v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s(0.0);
      for (std::size_t j = 0; j < len; ++j) s += h(i, k + 1 + j) * v[j];
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= 2.0 * s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

Complex wilkinson_shift(const Matrix<Complex>& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex mu1 = half_tr + disc, mu2 = half_tr - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

}  // namespace

// ---------------------------------------------------------------------------

double rank_cutoff(const std::vector<double>& sigma, std::size_t rows, std::size_t cols,
                   const TolerancePolicy& tol) {
  const double smax = sigma.empty() ? 0.0 : *std::max_element(sigma.begin(), sigma.end());
  return tol.rank_rel_tol * smax * static_cast<double>(std::max(rows, cols));
}

SingularValueDecomposition singular_value_decomposition(const Matrix<Complex>& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Matrix<Complex> w = m;
  Matrix<Complex> v = Matrix<Complex>::identity(cols);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma(0.0);
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase_conj = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const Complex wp = w(i, p);
          const Complex wq = w(i, q) * phase_conj;
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < cols; ++i) {
          const Complex vp = v(i, p);
          const Complex vq = v(i, q) * phase_conj;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += std::norm(w(i, j));
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  SingularValueDecomposition out;
  out.v = Matrix<Complex>(cols, cols);
  // Columns past min(rows, cols) or at roundoff level carry no direction.
  const double floor = cols == 0 ? 0.0 : kEps * norms[order[0]] * static_cast<double>(std::max(rows, cols));
  std::size_t positive = 0;
  for (std::size_t k = 0; k < cols; ++k) {
    out.sigma.push_back(norms[order[k]]);
    for (std::size_t i = 0; i < cols; ++i) out.v(i, k) = v(i, order[k]);
    if (k < rows && norms[order[k]] > floor) ++positive;
  }
  out.u = Matrix<Complex>(rows, positive);
  for (std::size_t k = 0; k < positive; ++k) {
    for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = w(i, order[k]) / out.sigma[k];
  }
  return out;
}

double condition_number(const Matrix<Complex>& m) {
  if (!m.is_square()) throw DimensionError("condition_number requires a square matrix");
  if (m.rows() == 0) return 1.0;
  const auto svd = singular_value_decomposition(m);
  const double smin = svd.sigma.back();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return svd.sigma.front() / smin;
}

std::vector<Complex> eigenvalues(const Matrix<Complex>& m) {
  if (!m.is_square()) throw DimensionError("eigenvalues require a square matrix");
  const std::size_t n = m.rows();
  std::vector<Complex> out;
  if (n == 0) return out;
  Matrix<Complex> h = m;
  reduce_to_hessenberg(h);
  const double scale = std::max(frobenius_norm(h), std::numeric_limits<double>::min());

  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  while (true) {
    if (hi == 0) {
      out.push_back(h(0, 0));
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (s == 0.0) s = scale;
      if (std::abs(h(lo, lo - 1)) <= kEps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (++total > 1000 * static_cast<int>(n)) throw std::runtime_error("eigenvalues: QR iteration did not converge");
    ++iter;
    Complex mu = wilkinson_shift(h, hi);
    if (iter % 11 == 10) mu = h(hi, hi) + std::abs(h(hi, hi - 1)) * Complex(0.75, 0.5);

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    std::vector<std::pair<Complex, Complex>> rotations;
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex a = h(k, k), b = h(k + 1, k);
      const double r = std::hypot(std::abs(a), std::abs(b));
      Complex c(1.0), s(0.0);
      if (r > 0.0) {
        c = a / r;
        s = b / r;
      }
      rotations.emplace_back(c, s);
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex x = h(k, j), y = h(k + 1, j);
        h(k, j) = std::conj(c) * x + std::conj(s) * y;
        h(k + 1, j) = -s * x + c * y;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const auto [c, s] = rotations[k - lo];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex x = h(i, k), y = h(i, k + 1);
        h(i, k) = c * x + s * y;
        h(i, k + 1) = -std::conj(s) * x + std::conj(c) * y;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Matrix<Complex> orthonormal_completion(const Matrix<Complex>& q) {
  const std::size_t n = q.rows();
  if (q.cols() > n) throw DimensionError("orthonormal_completion: more columns than rows");
  std::vector<std::vector<Complex>> basis;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    std::vector<Complex> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = q(i, j);
    basis.push_back(std::move(col));
  }
  auto project_out = [&](std::vector<Complex>& x) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        Complex d(0.0);
        for (std::size_t i = 0; i < n; ++i) d += std::conj(b[i]) * x[i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= d * b[i];
      }
    }
  };
  auto norm_of = [](const std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
  };
  while (basis.size() < n) {
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<Complex> x(n, 0.0);
      x[e] = 1.0;
      project_out(x);
      const double nx = norm_of(x);
      if (nx > best_norm) {
        best_norm = nx;
        best = std::move(x);
      }
    }
    project_out(best);
    const double nb = norm_of(best);
    for (auto& z : best) z /= nb;
    basis.push_back(std::move(best));
  }
  Matrix<Complex> out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = basis[j][i];
  return out;
}

// ---------------------------------------------------------------------------
// Backend-dispatching operations

template <Scalar T>
std::size_t rank(const Matrix<T>& m, const TolerancePolicy& tol) {
  if (m.empty()) return 0;
  if constexpr (is_exact_v<T>) {
    return bareiss(m, nullptr);
  } else {
    if (m.is_zero()) return 0;
    return numerical_rank(singular_value_decomposition(m), m.rows(), m.cols(), tol);
  }
}

template <Scalar T>
std::vector<Matrix<T>> nullspace_basis(const Matrix<T>& m, const TolerancePolicy& tol) {
  std::vector<Matrix<T>> out;
  const std::size_t cols = m.cols();
  if constexpr (is_exact_v<T>) {
    const auto ech = reduced_row_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : ech.pivot_cols) is_pivot[p] = true;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      Matrix<T> v(cols, 1);
      v(f, 0) = T(1);
      for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) v(ech.pivot_cols[i], 0) = -ech.reduced(i, f);
      out.push_back(std::move(v));
    }
  } else {
    if (m.empty() || m.is_zero()) {
      for (std::size_t j = 0; j < cols; ++j) {
        Matrix<T> v(cols, 1);
        v(j, 0) = 1.0;
        out.push_back(std::move(v));
      }
      return out;
    }
    const auto svd = singular_value_decomposition(m);
    const std::size_t r = numerical_rank(svd, m.rows(), cols, tol);
    for (std::size_t k = r; k < cols; ++k) out.push_back(column_of(svd.v, k));
  }
  return out;
}

template <Scalar T>
Matrix<T> nullspace_matrix(const Matrix<T>& m, const TolerancePolicy& tol) {
  const auto basis = nullspace_basis(m, tol);
  Matrix<T> out(m.cols(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) out.set_block(0, k, basis[k]);
  return out;
}

template <Scalar T>
std::optional<Matrix<T>> solve_linear(const Matrix<T>& a, const Matrix<T>& b, const TolerancePolicy& tol) {
  if (a.rows() != b.rows()) {
    throw DimensionError("solve_linear: a is " + a.shape() + " but b is " + b.shape());
  }
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  if constexpr (is_exact_v<T>) {
    const auto ech = reduced_row_echelon(hstack(a, b));
    Matrix<T> x(n, k);
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
      const std::size_t p = ech.pivot_cols[i];
      if (p >= n) return std::nullopt;
      for (std::size_t j = 0; j < k; ++j) x(p, j) = ech.reduced(i, n + j);
    }
    return x;
  } else {
    Matrix<T> x(n, k);
    if (!a.empty() && !a.is_zero()) {
      const auto svd = singular_value_decomposition(a);
      const std::size_t r = numerical_rank(svd, a.rows(), n, tol);
      for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t j = 0; j < k; ++j) {
          Complex coeff(0.0);
          for (std::size_t i = 0; i < a.rows(); ++i) coeff += std::conj(svd.u(i, s)) * b(i, j);
          coeff /= svd.sigma[s];
          for (std::size_t i = 0; i < n; ++i) x(i, j) += svd.v(i, s) * coeff;
        }
      }
    }
    const double residual = frobenius_norm(Matrix<T>(a * x - b));
    const double scale = frobenius_norm(b) + frobenius_norm(a) * frobenius_norm(x);
    if (residual > tol.residual_tol * scale) return std::nullopt;
    return x;
  }
}

template <Scalar T>
Matrix<T> orthonormal_range_basis(const Matrix<T>& m, const TolerancePolicy& tol) {
  if constexpr (is_exact_v<T>) {
    throw UnsupportedError("orthonormal_range_basis is not available on the exact backend");
  } else {
    if (m.empty() || m.is_zero()) return Matrix<T>(m.rows(), 0);
    const auto svd = singular_value_decomposition(m);
    const std::size_t r = numerical_rank(svd, m.rows(), m.cols(), tol);
    return svd.u.block(0, 0, m.rows(), r);
  }
}

template <Scalar T>
std::vector<T> characteristic_polynomial(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionError("characteristic_polynomial requires a square matrix");
  if constexpr (is_exact_v<T>) {
    return faddeev_leverrier(m);
  } else {
    // prod (t - lambda_i), highest degree first
    std::vector<T> coeffs{1.0};
    for (const auto& lambda : eigenvalues(m)) {
      std::vector<T> next(coeffs.size() + 1, 0.0);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        next[i] += coeffs[i];
        next[i + 1] -= lambda * coeffs[i];
      }
      coeffs = std::move(next);
    }
    return coeffs;
  }
}

template <Scalar T>
T determinant(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionError("determinant requires a square matrix");
  if constexpr (is_exact_v<T>) {
    Exact det;
    bareiss(m, &det);
    return det;
  } else {
    return lu_determinant(m);
  }
}

#define ABBA_INSTANTIATE(T)                                                                             \
  template std::size_t rank<T>(const Matrix<T>&, const TolerancePolicy&);                               \
  template std::vector<Matrix<T>> nullspace_basis<T>(const Matrix<T>&, const TolerancePolicy&);         \
  template Matrix<T> nullspace_matrix<T>(const Matrix<T>&, const TolerancePolicy&);                     \
  template std::optional<Matrix<T>> solve_linear<T>(const Matrix<T>&, const Matrix<T>&,                 \
                                                    const TolerancePolicy&);                            \
  template Matrix<T> orthonormal_range_basis<T>(const Matrix<T>&, const TolerancePolicy&);              \
  template std::vector<T> characteristic_polynomial<T>(const Matrix<T>&);                               \
  template T determinant<T>(const Matrix<T>&);

ABBA_INSTANTIATE(Exact)
ABBA_INSTANTIATE(Complex)
#undef ABBA_INSTANTIATE

}  // namespace abba
