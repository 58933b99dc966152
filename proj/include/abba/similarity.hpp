#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abba/matrix.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/tolerance.hpp"

namespace abba {

enum class VerdictReason { rank_sequence_equal, rank_sequence_differ, full_rank_shortcut };

std::string_view to_string(VerdictReason reason);

/// Whether AB ~ BA. `similar` holds exactly when the two rank sequences agree.
struct SimilarityVerdict {
  bool similar = false;
  VerdictReason reason = VerdictReason::rank_sequence_equal;
  RankSequence seq_ab;
  RankSequence seq_ba;
  std::vector<std::string> warnings;
};

/// Independent recomputation of the evidence behind a certificate.
struct CertificateCheck {
  /// ||t m1 - m2 t|| / (||t|| max(||m1||, ||m2||)), Frobenius norms.
  double residual = 0.0;
  bool residual_ok = false;
  bool invertible = false;
  std::optional<Exact> determinant;  // exact backend
  std::optional<double> condition;   // float backend

  bool passed() const { return residual_ok && invertible; }
};

/// An invertible t with t * m1 = m2 * t.
template <Scalar T>
struct SimilarityCertificate {
  Matrix<T> t;
  CertificateCheck check;

  double residual() const { return check.residual; }
};

template <Scalar T>
CertificateCheck verify_certificate(const Matrix<T>& t, const Matrix<T>& m1, const Matrix<T>& m2,
                                    const TolerancePolicy& tol = {});

/// Compares the rank sequences of AB and BA. When rank(AB) = rank(BA) =
/// rank(A) the reason is reported as full_rank_shortcut.
template <Scalar T>
SimilarityVerdict decide_product_similarity(const Matrix<T>& a, const Matrix<T>& b, const TolerancePolicy& tol = {});

inline constexpr int kDefaultAttempts = 32;

/// Searches the solution space of S m1 - m2 S = 0 for an invertible S by
/// sampling random combinations of a null-space basis (integers in [-9, 9]
/// on the exact backend, standard Gaussians on the float backend). nullopt
/// means no sample was invertible; it is not evidence of non-similarity.
template <Scalar T>
std::optional<SimilarityCertificate<T>> find_intertwiner(const Matrix<T>& m1, const Matrix<T>& m2, std::uint64_t seed,
                                                         int attempts = kDefaultAttempts,
                                                         const TolerancePolicy& tol = {});

/// Explicit T with T (AB) = (BA) T when A is PSD (or has a PSD real part of
/// the same rank as A) and B is EP.
///
/// B is brought to the form C (+) 0 by a unitary V. In that basis
/// A = [[A11, A12], [A21, A22]] satisfies A12 = A11 X and A21 = Y A11, and
///
///   S = [[C + X Y, -X], [-Y, I]] = [[I, -X], [0, I]] (C (+) I) [[I, 0], [-Y, I]]
///
/// is invertible with S (A'B') = (B'A') S. For Hermitian A one may take
/// Y = X^*. The result is T = V S V^*.
///
/// Throws HypothesisError when the hypotheses fail, UnsupportedError for an
/// exact B that is not already block aligned, and Error when the assembled
/// certificate does not verify.
template <Scalar T>
SimilarityCertificate<T> construct_similarity_psd_ep(const Matrix<T>& a, const Matrix<T>& b,
                                                     const TolerancePolicy& tol = {});

/// [[X, X^*], [X^*, X]], always normal.
template <Scalar T>
Matrix<T> phi(const Matrix<T>& x);

/// (X1, X2) Hermitian with X = X1 + i X2.
template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> hermitian_parts(const Matrix<T>& x);

/// W = [[I, I], [-I, I]] of size 2n. W / sqrt(2) is unitary and
/// W phi(X) W^-1 = diag(2 X1, 2i X2).
template <Scalar T>
Matrix<T> phi_conjugator(std::size_t n);

/// Certificate for phi(X) phi(Y) ~ phi(Y) phi(X), assembled from intertwiners
/// of the Hermitian products X1 Y1 -> Y1 X1 and X2 Y2 -> Y2 X2 conjugated
/// back through W. Throws Error when the intertwiner search is exhausted.
template <Scalar T>
SimilarityCertificate<T> phi_similarity(const Matrix<T>& x, const Matrix<T>& y, std::uint64_t seed,
                                        int attempts = kDefaultAttempts, const TolerancePolicy& tol = {});

}  // namespace abba
