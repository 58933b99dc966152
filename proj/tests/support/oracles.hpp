#pragma once

// Slow, obviously-correct reference computations used only by the tests.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "abba/matrix.hpp"

namespace abba::oracle {

// Sum over permutations with explicit sign; fine up to n = 8.
inline Exact leibniz_determinant(const Matrix<Exact>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Exact total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Exact term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) idx.push_back(i);
    }
    f(idx);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const Matrix<Exact>& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    bool found = false;
    subsets(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      if (found) return;
      subsets(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        if (found) return;
        Matrix<Exact> sub(k, k);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
        }
        found = !leibniz_determinant(sub).is_zero();
      });
    });
    if (found) return k;
  }
  return 0;
}

// Ranks of m^0 .. m^n computed with minor_rank, cut after the first repeat.
inline std::vector<int> power_ranks(const Matrix<Exact>& m) {
  std::vector<int> out{static_cast<int>(m.rows())};
  Matrix<Exact> p = m;
  for (std::size_t j = 1; j <= m.rows() + 1; ++j) {
    out.push_back(static_cast<int>(minor_rank(p)));
    if (out[out.size() - 1] == out[out.size() - 2]) {
      out.pop_back();
      break;
    }
    p = p * m;
  }
  return out;
}

// Every sequence n = s0 >= s1 >= ... >= sn with nonincreasing drops and
// s1 <= cap, built term by term, then cut at the first repeat.
inline std::set<std::vector<int>> brute_force_sequences(int n, int cap) {
  std::set<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = n;
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == s.size()) {
      if (s.size() > 1 && s[1] > cap) return;
      for (std::size_t j = 1; j < s.size(); ++j) {
        if (s[j] > s[j - 1]) return;
        if (j >= 2 && s[j - 1] - s[j] > s[j - 2] - s[j - 1]) return;
      }
      std::vector<int> cut{s[0]};
      for (std::size_t j = 1; j < s.size() && s[j] != s[j - 1]; ++j) cut.push_back(s[j]);
      out.insert(cut);
      return;
    }
    for (int v = 0; v <= s[i - 1]; ++v) {
      if (i >= 2 && s[i - 1] - v > s[i - 2] - s[i - 1]) continue;
      s[i] = v;
      fill(i + 1);
    }
  };
  fill(1);
  return out;
}

}  // namespace abba::oracle
