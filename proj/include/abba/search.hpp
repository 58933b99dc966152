#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abba/matrix.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/tolerance.hpp"

namespace abba {

/// Pair families sampled by search_counterexample:
///   normal           A, B normal
///   hermitian        A, B Hermitian
///   psd              A positive semidefinite, B normal
///   ep               A with PSD real part of the same rank, B EP
///   zero-one-normal  A, B normal partial permutation matrices
enum class Family { normal, hermitian, psd, ep, zero_one_normal };

std::string_view to_string(Family family);
/// Throws std::invalid_argument for an unknown name.
Family parse_family(std::string_view name);

/// Constraint on rank(A); rank(B) is drawn uniformly from 0..n.
struct RankConstraint {
  enum class Kind { any, exactly, at_most };
  Kind kind = Kind::any;
  std::size_t value = 0;
};

struct SearchSpec {
  Family family = Family::normal;
  std::size_t n = 3;
  RankConstraint rank;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  Backend backend = Backend::exact;

  /// Throws std::invalid_argument unless trials > 0, n > 0 and the rank bound is at most n.
  void validate() const;
};

/// A sampled pair whose products are not similar.
struct Finding {
  std::size_t trial = 0;
  AnyMatrix a;
  AnyMatrix b;
  RankSequence seq_ab;
  RankSequence seq_ba;
};

/// The pair drawn for trial `trial`; identical for identical (spec, trial).
std::pair<AnyMatrix, AnyMatrix> sample_pair(const SearchSpec& spec, std::size_t trial);

/// Runs decide_product_similarity on every sampled pair and reports the
/// non-similar ones in trial order.
std::vector<Finding> search_counterexample(const SearchSpec& spec, const TolerancePolicy& tol = {});

/// Admissible rank-sequence pairs for (AB, BA) when A, B are n x n normal of
/// rank n - 1 and the second term is at most cap: both sequences share the
/// second term (rank(AB) = rank(BA) for normal pairs) and the limit, the
/// second term is not n - 1 (that would force similarity), and, when
/// require_distinct is set, the sequences differ.
std::vector<std::pair<std::vector<int>, std::vector<int>>> minimal_counterexample_analysis(
    int n = 4, int cap = 2, bool require_distinct = true);

}  // namespace abba
