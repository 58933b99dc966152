#include "abba/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abba/classes.hpp"
#include "abba/linalg.hpp"

namespace abba {

namespace {

template <Scalar T>
bool traces_differ(const T& t1, const T& t2, double scale, std::size_t degree, const TolerancePolicy& tol) {
  if constexpr (is_exact_v<T>) {
    return !(t1 == t2);
  } else {
    const double bound = tol.residual_tol * std::pow(std::max(1.0, scale), static_cast<double>(degree));
    return std::abs(t1 - t2) > bound;
  }
}

}  // namespace

TraceWord::TraceWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ParseError("trace word must be nonempty");
}

TraceWord TraceWord::parse(std::string_view spelling) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < spelling.size(); ++i) {
    const char ch = spelling[i];
    if (ch == ' ') continue;
    if (ch != 'x' && ch != 'X') throw ParseError("malformed trace word '" + std::string(spelling) + "'");
    if (i + 1 < spelling.size() && spelling[i + 1] == '*') {
      letters.push_back(Letter::x_adjoint);
      ++i;
    } else {
      letters.push_back(Letter::x);
    }
  }
  if (letters.empty()) throw ParseError("trace word must be nonempty");
  return TraceWord(std::move(letters));
}

std::string TraceWord::str() const {
  std::string out;
  for (auto l : letters_) out += l == Letter::x ? "x" : "x*";
  return out;
}

TraceWord sextic_probe_word() {
  using enum Letter;
  return TraceWord({x_adjoint, x, x, x_adjoint, x_adjoint, x});
}

std::vector<TraceWord> words_of_length(std::size_t len) {
  std::vector<TraceWord> out;
  if (len == 0) return out;
  const std::uint64_t count = std::uint64_t{1} << len;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Letter> letters(len);
    for (std::size_t i = 0; i < len; ++i) {
      letters[i] = ((code >> (len - 1 - i)) & 1U) ? Letter::x_adjoint : Letter::x;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

template <Scalar T>
T trace_word(const Matrix<T>& m, const TraceWord& w) {
  if (!m.is_square()) throw DimensionError("trace_word requires a square matrix, got " + m.shape());
  const Matrix<T> madj = m.adjoint();
  Matrix<T> product = w.letters().front() == Letter::x ? m : madj;
  for (std::size_t k = 1; k < w.size(); ++k) product = product * (w.letters()[k] == Letter::x ? m : madj);
  return product.trace();
}

template <Scalar T>
WordTraceReport<T> word_trace_screen(const Matrix<T>& m1, const Matrix<T>& m2, std::size_t max_len,
                                     const TolerancePolicy& tol) {
  if (!m1.is_square() || m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
    throw DimensionError("word_trace_screen: shapes " + m1.shape() + " and " + m2.shape() + " differ");
  }
  WordTraceReport<T> report;
  report.max_len = max_len;
  const double scale = std::max(frobenius_norm(m1), frobenius_norm(m2));
  auto check = [&](const TraceWord& w) {
    ++report.words_checked;
    T t1 = trace_word(m1, w);
    T t2 = trace_word(m2, w);
    if (traces_differ(t1, t2, scale, w.size(), tol)) {
      report.distinguished = true;
      report.word = w;
      report.traces = std::pair<T, T>{std::move(t1), std::move(t2)};
      return true;
    }
    return false;
  };
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const auto& w : words_of_length(len)) {
      if (check(w)) return report;
    }
  }
  if (max_len < sextic_probe_word().size()) check(sextic_probe_word());
  return report;
}

template <Scalar T>
bool decide_unitary_2x2(const Matrix<T>& m1, const Matrix<T>& m2, const TolerancePolicy& tol) {
  for (const auto* m : {&m1, &m2}) {
    if (m->rows() != 2 || m->cols() != 2) throw DimensionError("decide_unitary_2x2 requires 2x2 matrices");
  }
  const double scale = std::max(frobenius_norm(m1), frobenius_norm(m2));
  const Matrix<T> sq1 = m1 * m1, sq2 = m2 * m2;
  const Matrix<T> g1 = m1.adjoint() * m1, g2 = m2.adjoint() * m2;
  return !traces_differ(m1.trace(), m2.trace(), scale, 1, tol) && !traces_differ(sq1.trace(), sq2.trace(), scale, 2, tol) &&
         !traces_differ(g1.trace(), g2.trace(), scale, 2, tol);
}

Matrix<Complex> extend_isometry_to_unitary(const Matrix<Complex>& domain, const Matrix<Complex>& image,
                                           const TolerancePolicy& tol) {
  if (domain.rows() != image.rows() || domain.cols() != image.cols()) {
    throw DimensionError("extend_isometry_to_unitary: domain " + domain.shape() + " vs image " + image.shape());
  }
  const std::size_t n = domain.rows();
  const std::size_t k = domain.cols();
  const Matrix<Complex> gram_d = domain.adjoint() * domain;
  const Matrix<Complex> gram_e = image.adjoint() * image;
  if (frobenius_norm(Matrix<Complex>(gram_d - gram_e)) > tol.residual_tol * std::max(1.0, frobenius_norm(gram_d))) {
    throw HypothesisError("extend_isometry_to_unitary: Gram matrices differ, the map is not an isometry");
  }

  // Gram-Schmidt on the domain; the same coefficients applied to the image
  // produce an orthonormal image basis because the Gram matrices agree.
  std::vector<Matrix<Complex>> qd, qe;
  for (std::size_t j = 0; j < k; ++j) {
    Matrix<Complex> d = domain.column(j);
    Matrix<Complex> e = image.column(j);
    const double original = frobenius_norm(d);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t b = 0; b < qd.size(); ++b) {
        const Complex coeff = (qd[b].adjoint() * d)(0, 0);
        d -= qd[b] * coeff;
        e -= qe[b] * coeff;
      }
    }
    const double nd = frobenius_norm(d);
    // Dependent column; sqrt(eps) balances the error of skipping against the
    // error amplified by normalizing a tiny remainder.
    if (nd <= std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, original)) continue;
    qd.push_back(d * Complex(1.0 / nd));
    qe.push_back(e * Complex(1.0 / nd));
  }
  Matrix<Complex> bd(n, qd.size()), be(n, qe.size());
  for (std::size_t j = 0; j < qd.size(); ++j) {
    bd.set_block(0, j, qd[j]);
    be.set_block(0, j, qe[j]);
  }
  return orthonormal_completion(be) * orthonormal_completion(bd).adjoint();
}

RankOneResult rank_one_normal_unitary(const Matrix<Complex>& a, const Matrix<Complex>& b, const TolerancePolicy& tol) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("rank_one_normal_unitary: need square matrices of the same size");
  }
  if (!is_normal(a, tol) || !is_normal(b, tol)) throw HypothesisError("rank_one_normal_unitary: A and B must be normal");
  const std::size_t ra = rank(a, tol);
  if (ra > 1) throw HypothesisError("rank_one_normal_unitary: rank(A) must be at most 1");

  const Matrix<Complex> ab = a * b;
  const Matrix<Complex> ba = b * a;
  const double prod_scale = std::max(frobenius_norm(ab), frobenius_norm(ba));
  const double ab_scale = frobenius_norm(a) * frobenius_norm(b);
  const double commuting_residual = ab_scale > 0.0 ? prod_scale / ab_scale : 0.0;
  if (ra == 0) return Commuting{commuting_residual};

  const Matrix<Complex> v = orthonormal_range_basis(a, tol).column(0);
  const Matrix<Complex> bv = b * v;
  const Matrix<Complex> badj_v = b.adjoint() * v;
  const double c = frobenius_norm(bv);
  if (c <= tol.residual_tol * frobenius_norm(b)) return Commuting{commuting_residual};

  const Complex inv_c(1.0 / c);
  const Matrix<Complex> domain = hstack(v, Matrix<Complex>(badj_v * inv_c));
  const Matrix<Complex> image = hstack(Matrix<Complex>(bv * inv_c), v);
  RankOneUnitaryWitness w;
  w.u = extend_isometry_to_unitary(domain, image, tol);
  w.residual = frobenius_norm(Matrix<Complex>(ba * w.u - w.u * ab)) / prod_scale;
  w.unitarity_residual =
      frobenius_norm(Matrix<Complex>(w.u.adjoint() * w.u - Matrix<Complex>::identity(a.rows())));
  return w;
}

#define ABBA_INSTANTIATE(T)                                                                          \
  template T trace_word<T>(const Matrix<T>&, const TraceWord&);                                      \
  template WordTraceReport<T> word_trace_screen<T>(const Matrix<T>&, const Matrix<T>&, std::size_t,  \
                                                   const TolerancePolicy&);                          \
  template bool decide_unitary_2x2<T>(const Matrix<T>&, const Matrix<T>&, const TolerancePolicy&);

ABBA_INSTANTIATE(Exact)
ABBA_INSTANTIATE(Complex)
#undef ABBA_INSTANTIATE

}  // namespace abba
