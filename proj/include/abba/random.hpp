#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "abba/matrix.hpp"

namespace abba {

using Rng = std::mt19937_64;

/// Independent, reproducible stream for trial `index` of a run seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

// Exact generators use small Gaussian integers and rational unitaries (products
// of Householder reflections I - 2vv^*/(v^*v) with Gaussian-integer v, unit
// phases and a permutation), so every sample has Gaussian-rational entries.
// Float generators draw Haar unitaries (QR of a complex Gaussian matrix) and
// eigenvalue moduli in [0.5, 2].

/// Entries with real and imaginary parts in [-bound, bound] (exact) or
/// standard complex Gaussian (float).
template <Scalar T>
Matrix<T> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound = 3);

template <Scalar T>
Matrix<T> random_unitary(Rng& rng, std::size_t n);

/// U D U^* with exactly `rank` nonzero eigenvalues.
template <Scalar T>
Matrix<T> random_normal(Rng& rng, std::size_t n, std::size_t rank);

/// U D U^* with real D and exactly `rank` nonzero eigenvalues of mixed sign.
template <Scalar T>
Matrix<T> random_hermitian(Rng& rng, std::size_t n, std::size_t rank);

/// G^* G with G of shape rank x n and full row rank.
template <Scalar T>
Matrix<T> random_psd(Rng& rng, std::size_t n, std::size_t rank);

/// V (C (+) 0) V^* with V unitary and C invertible of size rank.
template <Scalar T>
Matrix<T> random_ep(Rng& rng, std::size_t n, std::size_t rank);

/// U ((P + S) (+) 0) U^*: P positive definite, S skew-Hermitian, both of size
/// rank. The real part is PSD with the same rank as the matrix.
template <Scalar T>
Matrix<T> random_realpart_psd(Rng& rng, std::size_t n, std::size_t rank);

/// Partial permutation matrix with `rank` ones that is normal, found by
/// rejection sampling over all partial permutations.
template <Scalar T>
Matrix<T> random_zero_one_normal(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace abba
