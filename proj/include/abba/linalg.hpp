#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "abba/matrix.hpp"
#include "abba/tolerance.hpp"

namespace abba {

/// Rank over C. Exact backend: Bareiss elimination. Float backend: number of
/// singular values above rank_rel_tol * sigma_max * max(rows, cols).
template <Scalar T>
std::size_t rank(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// Basis of ker(m) as column vectors; cols - rank(m) of them.
template <Scalar T>
std::vector<Matrix<T>> nullspace_basis(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// Same basis packed as the columns of a single matrix (cols x nullity).
template <Scalar T>
Matrix<T> nullspace_matrix(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// Some X with a * X = b, or nullopt when the system is inconsistent.
/// Float: minimum-norm least-squares solution, accepted when
/// ||aX - b|| <= residual_tol * (||b|| + ||a|| ||X||).
template <Scalar T>
std::optional<Matrix<T>> solve_linear(const Matrix<T>& a, const Matrix<T>& b, const TolerancePolicy& tol = {});

/// Orthonormal basis of range(m), rank(m) columns ordered by decreasing
/// singular value. Float backend only; the exact backend throws
/// UnsupportedError because orthonormalization leaves Q(i).
template <Scalar T>
Matrix<T> orthonormal_range_basis(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// Coefficients of det(tI - m), leading coefficient first (size n + 1).
template <Scalar T>
std::vector<T> characteristic_polynomial(const Matrix<T>& m);

template <Scalar T>
T determinant(const Matrix<T>& m);

/// Thin singular value decomposition m = U diag(sigma) V^*, computed by
/// one-sided Jacobi. `sigma` has cols entries, largest first. `u` has one
/// column per singular value above roundoff (at most min(rows, cols)); `v`
/// is the full cols x cols unitary.
struct SingularValueDecomposition {
  Matrix<Complex> u;
  std::vector<double> sigma;
  Matrix<Complex> v;
};

SingularValueDecomposition singular_value_decomposition(const Matrix<Complex>& m);

/// Rank cutoff used by the float backend for a matrix with these singular values.
double rank_cutoff(const std::vector<double>& sigma, std::size_t rows, std::size_t cols,
                   const TolerancePolicy& tol);

/// sigma_max / sigma_min for a square matrix; +inf when singular.
double condition_number(const Matrix<Complex>& m);

/// Eigenvalues by Hessenberg reduction and shifted complex QR.
std::vector<Complex> eigenvalues(const Matrix<Complex>& m);

/// Completes orthonormal columns q (n x k) to an n x n unitary whose first k
/// columns are q. Candidates are the standard basis vectors, picked by
/// largest remaining norm after projection.
Matrix<Complex> orthonormal_completion(const Matrix<Complex>& q);

}  // namespace abba
