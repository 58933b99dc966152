#pragma once

#include <span>
#include <string>
#include <vector>

#include "abba/matrix.hpp"
#include "abba/tolerance.hpp"

namespace abba {

/// {rank(A^j)}_{j>=0} stored up to stabilization: terms[0] = n, and the last
/// stored term repeats forever.
struct RankSequence {
  int n = 0;
  std::vector<int> terms;
  /// Float backend only: notes about ranks clamped to keep the sequence nonincreasing.
  std::vector<std::string> warnings;

  int limit() const { return terms.back(); }

  friend bool operator==(const RankSequence& a, const RankSequence& b) { return a.terms == b.terms; }
};

/// Ranks of m^0, m^1, ... by repeated multiplication until two consecutive
/// ranks agree.
template <Scalar T>
RankSequence rank_sequence(const Matrix<T>& m, const TolerancePolicy& tol = {});

/// Nonempty, nonnegative, nonincreasing, and with nonincreasing drops.
bool is_valid_rank_sequence(std::span<const int> seq);

/// Drops trailing repeats: (4,2,0,0) -> (4,2,0).
std::vector<int> stabilize(std::span<const int> seq);

/// First differences up to stabilization. drops[j] is the number of
/// nilpotent Jordan blocks of size at least j + 1.
std::vector<int> drops(std::span<const int> seq);
inline std::vector<int> drops(const RankSequence& seq) { return drops(seq.terms); }

/// I_limit (+) nilpotent Jordan blocks whose size profile reproduces `seq`.
/// Throws std::invalid_argument for an invalid sequence.
template <Scalar T = Exact>
Matrix<T> realize_rank_sequence(std::span<const int> seq);

/// Every valid rank sequence (in stabilized form) starting at n whose second
/// term is at most cap, in lexicographic order of the infinite sequences.
std::vector<std::vector<int>> enumerate_tail_sequences(int n, int cap);

}  // namespace abba
