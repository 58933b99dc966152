#include "abba/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "abba/classes.hpp"
#include "abba/linalg.hpp"

namespace abba {

namespace {

long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Exact nonzero_gaussian_integer(Rng& rng, int bound) {
  while (true) {
    Exact z(mpq_class(uniform_int(rng, -bound, bound)), mpq_class(uniform_int(rng, -bound, bound)));
    if (!z.is_zero()) return z;
  }
}

Matrix<Exact> rational_reflection(Rng& rng, std::size_t n) {
  Matrix<Exact> v(n, 1);
  while (v.is_zero()) {
    for (std::size_t i = 0; i < n; ++i) {
      v(i, 0) = Exact(mpq_class(uniform_int(rng, -2, 2)), mpq_class(uniform_int(rng, -2, 2)));
    }
  }
  const Exact vv = (v.adjoint() * v)(0, 0);
  Matrix<Exact> h = Matrix<Exact>::identity(n);
  h -= (v * v.adjoint()) * (Exact(2) / vv);
  return h;
}

Complex random_modulus_phase(Rng& rng) {
  const double r = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  const double theta = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  return std::polar(r, theta);
}

template <Scalar T>
Matrix<T> conjugate_by(const Matrix<T>& u, const Matrix<T>& d) {
  return u * d * u.adjoint();
}

template <Scalar T>
Matrix<T> embed(const Matrix<T>& c, std::size_t n) {
  Matrix<T> out(n, n);
  out.set_block(0, 0, c);
  return out;
}

template <Scalar T>
Matrix<T> invertible_matrix(Rng& rng, std::size_t k) {
  while (true) {
    Matrix<T> c = random_matrix<T>(rng, k, k);
    if (rank(c) == k) return c;
  }
}

void check_rank(std::size_t n, std::size_t rank) {
  if (rank > n) throw std::invalid_argument("requested rank exceeds matrix size");
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

template <Scalar T>
Matrix<T> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  Matrix<T> m(rows, cols);
  for (auto& x : m.entries()) {
    if constexpr (is_exact_v<T>) {
      x = Exact(mpq_class(uniform_int(rng, -bound, bound)), mpq_class(uniform_int(rng, -bound, bound)));
    } else {
      std::normal_distribution<double> g(0.0, 1.0);
      const double re = g(rng);
      const double im = g(rng);
      x = Complex(re, im);
    }
  }
  return m;
}

template <Scalar T>
Matrix<T> random_unitary(Rng& rng, std::size_t n) {
  if constexpr (is_exact_v<T>) {
    Matrix<Exact> u = rational_reflection(rng, n) * rational_reflection(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    static const Exact units[4] = {Exact(1), Exact(-1), kImaginaryUnit, -kImaginaryUnit};
    Matrix<Exact> p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = units[uniform_int(rng, 0, 3)];
    return u * p;
  } else {
    // Modified Gram-Schmidt on a complex Gaussian matrix; the positive
    // diagonal of R makes the result Haar distributed.
    Matrix<Complex> g = random_matrix<Complex>(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex d(0.0);
        for (std::size_t i = 0; i < n; ++i) d += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= d * g(i, k);
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
      nrm = std::sqrt(nrm);
      for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
  }
}

template <Scalar T>
Matrix<T> random_normal(Rng& rng, std::size_t n, std::size_t rank) {
  check_rank(n, rank);
  Matrix<T> d(n, n);
  for (std::size_t i = 0; i < rank; ++i) {
    if constexpr (is_exact_v<T>) {
      d(i, i) = nonzero_gaussian_integer(rng, 3);
    } else {
      d(i, i) = random_modulus_phase(rng);
    }
  }
  return conjugate_by(random_unitary<T>(rng, n), d);
}

template <Scalar T>
Matrix<T> random_hermitian(Rng& rng, std::size_t n, std::size_t rank) {
  check_rank(n, rank);
  Matrix<T> d(n, n);
  for (std::size_t i = 0; i < rank; ++i) {
    if constexpr (is_exact_v<T>) {
      long v = 0;
      while (v == 0) v = uniform_int(rng, -3, 3);
      d(i, i) = Exact(v);
    } else {
      const double mag = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
      d(i, i) = uniform_int(rng, 0, 1) ? mag : -mag;
    }
  }
  return conjugate_by(random_unitary<T>(rng, n), d);
}

template <Scalar T>
Matrix<T> random_psd(Rng& rng, std::size_t n, std::size_t rank) {
  check_rank(n, rank);
  while (true) {
    Matrix<T> g = random_matrix<T>(rng, rank, n);
    if (abba::rank(g) == rank) return g.adjoint() * g;
  }
}

template <Scalar T>
Matrix<T> random_ep(Rng& rng, std::size_t n, std::size_t rank) {
  check_rank(n, rank);
  return conjugate_by(random_unitary<T>(rng, n), embed(invertible_matrix<T>(rng, rank), n));
}

template <Scalar T>
Matrix<T> random_realpart_psd(Rng& rng, std::size_t n, std::size_t rank) {
  check_rank(n, rank);
  const Matrix<T> g = invertible_matrix<T>(rng, rank);
  const Matrix<T> k = random_matrix<T>(rng, rank, rank);
  const Matrix<T> m = g.adjoint() * g + (k - k.adjoint());
  return conjugate_by(random_unitary<T>(rng, n), embed(m, n));
}

template <Scalar T>
Matrix<T> random_zero_one_normal(Rng& rng, std::size_t n, std::size_t rank) {
  check_rank(n, rank);
  std::vector<std::size_t> rows(n), cols(n);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  while (true) {
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    Matrix<T> p(n, n);
    for (std::size_t k = 0; k < rank; ++k) p(rows[k], cols[k]) = T(1);
    if (is_normal(p)) return p;
  }
}

#define ABBA_INSTANTIATE(T)                                                              \
  template Matrix<T> random_matrix<T>(Rng&, std::size_t, std::size_t, int);             \
  template Matrix<T> random_unitary<T>(Rng&, std::size_t);                               \
  template Matrix<T> random_normal<T>(Rng&, std::size_t, std::size_t);                   \
  template Matrix<T> random_hermitian<T>(Rng&, std::size_t, std::size_t);                \
  template Matrix<T> random_psd<T>(Rng&, std::size_t, std::size_t);                      \
  template Matrix<T> random_ep<T>(Rng&, std::size_t, std::size_t);                       \
  template Matrix<T> random_realpart_psd<T>(Rng&, std::size_t, std::size_t);             \
  template Matrix<T> random_zero_one_normal<T>(Rng&, std::size_t, std::size_t);

ABBA_INSTANTIATE(Exact)
ABBA_INSTANTIATE(Complex)
#undef ABBA_INSTANTIATE

}  // namespace abba
