#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "abba/matrix.hpp"
#include "abba/tolerance.hpp"

namespace abba {

enum class Letter : std::uint8_t { x, x_adjoint };

/// Nonempty word over {X, X^*}; spelled as a string such as "x*xxx*x*x".
class TraceWord {
 public:
  explicit TraceWord(std::vector<Letter> letters);

  /// Throws ParseError on an empty or malformed spelling.
  static TraceWord parse(std::string_view spelling);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  std::string str() const;

  friend bool operator==(const TraceWord&, const TraceWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// X^* X^2 (X^*)^2 X, which separates the products of the 3x3 Hermitian
/// catalog pair. Always checked by word_trace_screen.
TraceWord sextic_probe_word();

/// All words of length `len` in canonical order (X < X^*, lexicographic).
std::vector<TraceWord> words_of_length(std::size_t len);

template <Scalar T>
T trace_word(const Matrix<T>& m, const TraceWord& w);

/// One-sided test: `distinguished` proves the matrices are not unitarily
/// similar. Not being distinguished is inconclusive for n >= 3.
template <Scalar T>
struct WordTraceReport {
  bool distinguished = false;
  std::size_t max_len = 0;
  std::size_t words_checked = 0;
  std::optional<TraceWord> word;
  std::optional<std::pair<T, T>> traces;
};

inline constexpr std::size_t kDefaultMaxWordLength = 6;

/// Compares word traces for every word up to max_len (shortest first, X < X^*)
/// and then the probe word if it was not already covered. Float traces count
/// as different when they differ by more than residual_tol * max(1, s)^len,
/// s the larger Frobenius norm.
template <Scalar T>
WordTraceReport<T> word_trace_screen(const Matrix<T>& m1, const Matrix<T>& m2,
                                     std::size_t max_len = kDefaultMaxWordLength, const TolerancePolicy& tol = {});

/// (tr X, tr X^2, tr X^*X) is a complete unitary invariant for 2x2 matrices.
template <Scalar T>
bool decide_unitary_2x2(const Matrix<T>& m1, const Matrix<T>& m2, const TolerancePolicy& tol = {});

/// A unitary U with BAU = UAB.
struct RankOneUnitaryWitness {
  Matrix<Complex> u;
  /// ||BAU - UAB|| / max(||AB||, ||BA||)
  double residual = 0.0;
  /// ||U^*U - I||
  double unitarity_residual = 0.0;
};

/// Bv = 0 (hence AB = BA = 0), or A = 0.
struct Commuting {
  double residual = 0.0;  // max(||AB||, ||BA||) relative to ||A|| ||B||
};

using RankOneResult = std::variant<RankOneUnitaryWitness, Commuting>;

/// For normal A of rank <= 1 and normal B: with A = lambda v v^* and
/// c = ||Bv||, maps v -> Bv/c and B^*v/c -> v isometrically and extends to a
/// unitary. Throws HypothesisError when A or B fails the hypotheses.
RankOneResult rank_one_normal_unitary(const Matrix<Complex>& a, const Matrix<Complex>& b,
                                      const TolerancePolicy& tol = {});

/// A unitary agreeing with domain[:, k] -> image[:, k] for every k. The
/// columns may be linearly dependent, but the Gram matrices must agree.
/// Throws HypothesisError on a Gram mismatch.
Matrix<Complex> extend_isometry_to_unitary(const Matrix<Complex>& domain, const Matrix<Complex>& image,
                                           const TolerancePolicy& tol = {});

}  // namespace abba
