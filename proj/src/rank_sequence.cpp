#include "abba/rank_sequence.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "abba/linalg.hpp"

namespace abba {

template <Scalar T>
RankSequence rank_sequence(const Matrix<T>& m, const TolerancePolicy& tol) {
  if (!m.is_square()) throw DimensionError("rank_sequence requires a square matrix, got " + m.shape());
  RankSequence seq;
  seq.n = static_cast<int>(m.rows());
  seq.terms.push_back(seq.n);
  Matrix<T> power = m;
  // A rank sequence stabilizes within n steps, so n + 1 powers always suffice.
  for (int j = 1; j <= seq.n + 1; ++j) {
    int r = static_cast<int>(rank(power, tol));
    if (r > seq.terms.back()) {
      seq.warnings.push_back("rank of power " + std::to_string(j) + " rose from " +
                             std::to_string(seq.terms.back()) + " to " + std::to_string(r) +
                             "; clamped to keep the sequence nonincreasing");
      r = seq.terms.back();
    }
    if (r == seq.terms.back()) break;
    seq.terms.push_back(r);
    if (r == 0) break;
    power = power * m;
  }
  return seq;
}

bool is_valid_rank_sequence(std::span<const int> seq) {
  if (seq.empty()) return false;
  int prev_drop = -1;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (seq[j] < 0) return false;
    if (j == 0) continue;
    const int drop = seq[j - 1] - seq[j];
    if (drop < 0) return false;
    if (prev_drop >= 0 && drop > prev_drop) return false;
    prev_drop = drop;
  }
  return true;
}

std::vector<int> stabilize(std::span<const int> seq) {
  std::vector<int> out;
  for (int x : seq) {
    if (!out.empty() && out.back() == x) break;
    out.push_back(x);
  }
  return out;
}

std::vector<int> drops(std::span<const int> seq) {
  const auto s = stabilize(seq);
  std::vector<int> out;
  for (std::size_t j = 1; j < s.size(); ++j) out.push_back(s[j - 1] - s[j]);
  return out;
}

template <Scalar T>
Matrix<T> realize_rank_sequence(std::span<const int> seq) {
  if (!is_valid_rank_sequence(seq)) throw std::invalid_argument("not a valid rank sequence");
  const auto s = stabilize(seq);
  const auto d = drops(s);
  const int n = s.front();
  const int limit = s.back();
  Matrix<T> out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  std::size_t pos = 0;
  for (int i = 0; i < limit; ++i, ++pos) out(pos, pos) = T(1);
  // Blocks of size exactly k number d[k-1] - d[k]; emit the largest first.
  for (int k = static_cast<int>(d.size()); k >= 1; --k) {
    const int at_least_k = d[k - 1];
    const int at_least_next = k < static_cast<int>(d.size()) ? d[k] : 0;
    for (int b = 0; b < at_least_k - at_least_next; ++b) {
      for (int i = 0; i + 1 < k; ++i) out(pos + i, pos + i + 1) = T(1);
      pos += static_cast<std::size_t>(k);
    }
  }
  return out;
}

std::vector<std::vector<int>> enumerate_tail_sequences(int n, int cap) {
  if (n < 0 || cap < 0) throw std::invalid_argument("enumerate_tail_sequences: negative argument");
  std::vector<std::vector<int>> out;
  std::vector<int> current{n};
  std::function<void(int)> extend = [&](int prev_drop) {
    out.push_back(current);
    const int term = current.back();
    for (int drop = std::min(prev_drop, term); drop >= 1; --drop) {
      current.push_back(term - drop);
      extend(drop);
      current.pop_back();
    }
  };
  for (int second = 0; second <= std::min(cap, n); ++second) {
    if (second == n) {
      out.push_back(current);
      continue;
    }
    current.push_back(second);
    extend(n - second);
    current.pop_back();
  }
  // Order as infinite sequences, i.e. with the last term repeated.
  const auto padded = [n](const std::vector<int>& v) {
    std::vector<int> p = v;
    p.resize(static_cast<std::size_t>(n) + 2, v.back());
    return p;
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return padded(a) < padded(b); });
  return out;
}

template RankSequence rank_sequence<Exact>(const Matrix<Exact>&, const TolerancePolicy&);
template RankSequence rank_sequence<Complex>(const Matrix<Complex>&, const TolerancePolicy&);
template Matrix<Exact> realize_rank_sequence<Exact>(std::span<const int>);
template Matrix<Complex> realize_rank_sequence<Complex>(std::span<const int>);

}  // namespace abba
