#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "abba/matrix.hpp"
#include "abba/tolerance.hpp"

namespace abba {

/// Structural predicates of one square matrix. The implications
/// psd => hermitian => normal => ep always hold in a report.
struct ClassReport {
  bool hermitian = false;
  bool normal = false;
  bool psd = false;
  bool ep = false;
  bool realpart_psd_same_rank = false;
  std::size_t rank = 0;
  /// Predicate name -> human-readable evidence for a failed predicate.
  std::map<std::string, std::string> witnesses;
};

template <Scalar T>
bool is_hermitian(const Matrix<T>& m, const TolerancePolicy& tol = {});

template <Scalar T>
bool is_normal(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// Exact: Hermitian and every elementary symmetric function of the
/// eigenvalues (sum of k x k principal minors) is nonnegative.
/// Float: Hermitian and smallest eigenvalue >= -residual_tol * ||m||.
template <Scalar T>
bool is_psd(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// range(m) = range(m^*), tested as rank([m | m^*]) = rank(m).
template <Scalar T>
bool is_ep(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// (m + m^*)/2 is PSD and has the same rank as m.
template <Scalar T>
bool realpart_psd_same_rank(const Matrix<T>& m, const TolerancePolicy& tol = {});

template <Scalar T>
ClassReport classify(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// (m + m^*)/2
template <Scalar T>
Matrix<T> real_part(const Matrix<T>& m);

/// v^* m v = c (+) 0 with v unitary and c invertible (r x r).
template <Scalar T>
struct EPDecomposition {
  Matrix<T> v;
  Matrix<T> c;
  std::size_t r = 0;
};

/// Throws HypothesisError when m is not EP. On the exact backend only inputs
/// already of the form c (+) 0 are accepted (v = I); anything else throws
/// UnsupportedError.
template <Scalar T>
EPDecomposition<T> ep_decomposition(const Matrix<T>& m, const TolerancePolicy& tol = {});

template <Scalar T>
struct ColumnInclusionFactor {
  Matrix<T> x;  // r x (n - r), with A11 x = A12
  double residual = 0.0;
};

/// Splits a at index r and solves A11 X = A12. nullopt when
/// range(A12) is not contained in range(A11). Throws std::invalid_argument
/// when r > n.
template <Scalar T>
std::optional<ColumnInclusionFactor<T>> column_inclusion_factor(const Matrix<T>& a, std::size_t r,
                                                                 const TolerancePolicy& tol = {});

}  // namespace abba
