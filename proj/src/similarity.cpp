#include "abba/similarity.hpp"

#include <algorithm>
#include <sstream>

#include "abba/classes.hpp"
#include "abba/linalg.hpp"
#include "abba/random.hpp"

namespace abba {

namespace {

template <Scalar T>
void require_square_pair(const Matrix<T>& a, const Matrix<T>& b, const char* what) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": need two square matrices of the same size, got " + a.shape() +
                         " and " + b.shape());
  }
}

// Matrix of S -> S m1 - m2 S acting on row-major vec(S).
template <Scalar T>
Matrix<T> sylvester_operator(const Matrix<T>& m1, const Matrix<T>& m2) {
  const std::size_t n = m1.rows();
  Matrix<T> op(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        op(row, i * n + k) += m1(k, j);
        op(row, k * n + j) -= m2(i, k);
      }
    }
  }
  return op;
}

std::string failure_message(const char* what, const CertificateCheck& check) {
  std::ostringstream os;
  os << what << ": certificate failed verification (residual " << check.residual;
  if (check.condition) os << ", condition " << *check.condition;
  if (check.determinant) os << ", determinant " << check.determinant->str();
  os << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::rank_sequence_equal:
      return "rank-sequence-equal";
    case VerdictReason::rank_sequence_differ:
      return "rank-sequence-differ";
    case VerdictReason::full_rank_shortcut:
      return "full-rank-shortcut";
  }
  return "unknown";
}

template <Scalar T>
CertificateCheck verify_certificate(const Matrix<T>& t, const Matrix<T>& m1, const Matrix<T>& m2,
                                    const TolerancePolicy& tol) {
  require_square_pair(m1, m2, "verify_certificate");
  if (!t.is_square() || t.rows() != m1.rows()) {
    throw DimensionError("verify_certificate: t is " + t.shape() + " but the matrices are " + m1.shape());
  }
  CertificateCheck check;
  const Matrix<T> diff = t * m1 - m2 * t;
  const double denom = frobenius_norm(t) * std::max(frobenius_norm(m1), frobenius_norm(m2));
  const double raw = frobenius_norm(diff);
  check.residual = denom > 0.0 ? raw / denom : raw;
  if constexpr (is_exact_v<T>) {
    check.residual_ok = diff.is_zero();
    if (check.residual_ok) check.residual = 0.0;
    check.determinant = determinant(t);
    check.invertible = !check.determinant->is_zero();
  } else {
    check.residual_ok = check.residual <= tol.residual_tol;
    check.condition = condition_number(t);
    check.invertible = *check.condition <= tol.max_condition;
  }
  return check;
}

template <Scalar T>
SimilarityVerdict decide_product_similarity(const Matrix<T>& a, const Matrix<T>& b, const TolerancePolicy& tol) {
  require_square_pair(a, b, "decide_product_similarity");
  const Matrix<T> ab = a * b;
  const Matrix<T> ba = b * a;
  SimilarityVerdict verdict;
  verdict.seq_ab = rank_sequence(ab, tol);
  verdict.seq_ba = rank_sequence(ba, tol);
  verdict.similar = verdict.seq_ab == verdict.seq_ba;

  const int rank_a = static_cast<int>(rank(a, tol));
  const bool shortcut = verdict.seq_ab.terms.size() > 1 ? verdict.seq_ab.terms[1] == rank_a
                                                         : verdict.seq_ab.n == rank_a;
  const bool shortcut_ba = verdict.seq_ba.terms.size() > 1 ? verdict.seq_ba.terms[1] == rank_a
                                                            : verdict.seq_ba.n == rank_a;
  if (!verdict.similar) {
    verdict.reason = VerdictReason::rank_sequence_differ;
    if (shortcut && shortcut_ba) {
      verdict.warnings.push_back("rank(AB) = rank(BA) = rank(A) but the rank sequences differ; check tolerances");
    }
  } else {
    verdict.reason = shortcut && shortcut_ba ? VerdictReason::full_rank_shortcut : VerdictReason::rank_sequence_equal;
  }
  for (const auto* seq : {&verdict.seq_ab, &verdict.seq_ba}) {
    verdict.warnings.insert(verdict.warnings.end(), seq->warnings.begin(), seq->warnings.end());
  }
  return verdict;
}

template <Scalar T>
std::optional<SimilarityCertificate<T>> find_intertwiner(const Matrix<T>& m1, const Matrix<T>& m2, std::uint64_t seed,
                                                         int attempts, const TolerancePolicy& tol) {
  require_square_pair(m1, m2, "find_intertwiner");
  const std::size_t n = m1.rows();
  const auto basis = nullspace_basis(sylvester_operator(m1, m2), tol);
  if (basis.empty()) return std::nullopt;

  Rng rng(seed);
  std::uniform_int_distribution<long> small(-9, 9);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Matrix<T> vec(n * n, 1);
    for (const auto& v : basis) {
      T coeff;
      if constexpr (is_exact_v<T>) {
        coeff = Exact(small(rng));
      } else {
        coeff = gauss(rng);
      }
      vec += v * coeff;
    }
    Matrix<T> s(n, n, std::vector<T>(vec.entries().begin(), vec.entries().end()));
    auto check = verify_certificate(s, m1, m2, tol);
    if (check.passed()) return SimilarityCertificate<T>{std::move(s), std::move(check)};
  }
  return std::nullopt;
}

template <Scalar T>
SimilarityCertificate<T> construct_similarity_psd_ep(const Matrix<T>& a, const Matrix<T>& b,
                                                     const TolerancePolicy& tol) {
  require_square_pair(a, b, "construct_similarity_psd_ep");
  if (!is_psd(a, tol) && !realpart_psd_same_rank(a, tol)) {
    throw HypothesisError("construct_similarity_psd_ep: A is neither PSD nor has a PSD real part of equal rank");
  }
  if (!is_ep(b, tol)) throw HypothesisError("construct_similarity_psd_ep: B is not EP");

  const std::size_t n = a.rows();
  const auto ep = ep_decomposition(b, tol);
  const std::size_t r = ep.r;
  const Matrix<T> aligned = ep.v.adjoint() * a * ep.v;

  const auto col = column_inclusion_factor(aligned, r, tol);
  if (!col) throw HypothesisError("construct_similarity_psd_ep: A12 = A11 X has no solution");
  // Row inclusion A21 = Y A11 is column inclusion for the adjoint.
  const auto row = column_inclusion_factor(aligned.adjoint(), r, tol);
  if (!row) throw HypothesisError("construct_similarity_psd_ep: A21 = Y A11 has no solution");
  const Matrix<T>& x = col->x;
  const Matrix<T> y = row->x.adjoint();

  const Matrix<T> s = block2x2(Matrix<T>(ep.c + x * y), Matrix<T>(-x), Matrix<T>(-y), Matrix<T>::identity(n - r));
  Matrix<T> t = ep.v * s * ep.v.adjoint();
  auto check = verify_certificate(t, Matrix<T>(a * b), Matrix<T>(b * a), tol);
  if (!check.passed()) throw Error(failure_message("construct_similarity_psd_ep", check));
  return {std::move(t), std::move(check)};
}

template <Scalar T>
Matrix<T> phi(const Matrix<T>& x) {
  if (!x.is_square()) throw DimensionError("phi requires a square matrix, got " + x.shape());
  const Matrix<T> xa = x.adjoint();
  return block2x2(x, xa, xa, x);
}

template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> hermitian_parts(const Matrix<T>& x) {
  if (!x.is_square()) throw DimensionError("hermitian_parts requires a square matrix, got " + x.shape());
  const Matrix<T> xa = x.adjoint();
  T half, minus_half_i;
  if constexpr (is_exact_v<T>) {
    half = Exact(mpq_class(1, 2));
    minus_half_i = Exact(mpq_class(0), mpq_class(-1, 2));
  } else {
    half = 0.5;
    minus_half_i = Complex(0.0, -0.5);
  }
  // (X - X^*) / (2i) = -(i/2)(X - X^*)
  return {(x + xa) * half, (x - xa) * minus_half_i};
}

template <Scalar T>
Matrix<T> phi_conjugator(std::size_t n) {
  const Matrix<T> id = Matrix<T>::identity(n);
  return block2x2(id, id, Matrix<T>(-id), id);
}

template <Scalar T>
SimilarityCertificate<T> phi_similarity(const Matrix<T>& x, const Matrix<T>& y, std::uint64_t seed, int attempts,
                                        const TolerancePolicy& tol) {
  require_square_pair(x, y, "phi_similarity");
  const std::size_t n = x.rows();
  const Matrix<T> px = phi(x);
  const Matrix<T> py = phi(y);
  const Matrix<T> m1 = px * py;
  const Matrix<T> m2 = py * px;

  Matrix<T> id = Matrix<T>::identity(2 * n);
  if (auto check = verify_certificate(id, m1, m2, tol); check.passed()) return {std::move(id), std::move(check)};

  const auto [x1, x2] = hermitian_parts(x);
  const auto [y1, y2] = hermitian_parts(y);
  const T four = from_int<T>(4);
  const auto t1 = find_intertwiner(Matrix<T>(x1 * y1 * four), Matrix<T>(y1 * x1 * four), seed, attempts, tol);
  const auto t2 = find_intertwiner(Matrix<T>(x2 * y2 * (-four)), Matrix<T>(y2 * x2 * (-four)), seed + 1, attempts, tol);
  if (!t1 || !t2) throw Error("phi_similarity: intertwiner search exhausted its attempt budget");

  // phi(X) = W^-1 diag(2X1, 2iX2) W with W^-1 = W^T / 2.
  const Matrix<T> w = phi_conjugator<T>(n);
  T half;
  if constexpr (is_exact_v<T>) {
    half = Exact(mpq_class(1, 2));
  } else {
    half = 0.5;
  }
  const Matrix<T> w_inv = w.transpose() * half;
  Matrix<T> t = w_inv * direct_sum(t1->t, t2->t) * w;
  auto check = verify_certificate(t, m1, m2, tol);
  if (!check.passed()) throw Error(failure_message("phi_similarity", check));
  return {std::move(t), std::move(check)};
}

#define ABBA_INSTANTIATE(T)                                                                                     \
  template CertificateCheck verify_certificate<T>(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,         \
                                                  const TolerancePolicy&);                                      \
  template SimilarityVerdict decide_product_similarity<T>(const Matrix<T>&, const Matrix<T>&,                   \
                                                          const TolerancePolicy&);                              \
  template std::optional<SimilarityCertificate<T>> find_intertwiner<T>(const Matrix<T>&, const Matrix<T>&,      \
                                                                       std::uint64_t, int,                      \
                                                                       const TolerancePolicy&);                 \
  template SimilarityCertificate<T> construct_similarity_psd_ep<T>(const Matrix<T>&, const Matrix<T>&,          \
                                                                   const TolerancePolicy&);                     \
  template Matrix<T> phi<T>(const Matrix<T>&);                                                                  \
  template std::pair<Matrix<T>, Matrix<T>> hermitian_parts<T>(const Matrix<T>&);                                \
  template Matrix<T> phi_conjugator<T>(std::size_t);                                                            \
  template SimilarityCertificate<T> phi_similarity<T>(const Matrix<T>&, const Matrix<T>&, std::uint64_t, int,   \
                                                      const TolerancePolicy&);

ABBA_INSTANTIATE(Exact)
ABBA_INSTANTIATE(Complex)
#undef ABBA_INSTANTIATE

}  // namespace abba
