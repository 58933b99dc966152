#include "abba/catalog.hpp"

#include <sstream>
#include <stdexcept>

#include "abba/classes.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/similarity.hpp"
#include "abba/unitary.hpp"

namespace abba {

namespace {

constexpr std::uint64_t kCatalogSeed = 20140101;

template <class F>
ClaimOutcome on_backend(Backend backend, F&& f) {
  if (backend == Backend::exact) return f.template operator()<Exact>();
  return f.template operator()<Complex>();
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

template <Scalar T>
bool approximately_zero(const Matrix<T>& m, double scale, const TolerancePolicy& tol) {
  if constexpr (is_exact_v<T>) {
    return m.is_zero();
  } else {
    return frobenius_norm(m) <= tol.residual_tol * std::max(1.0, scale);
  }
}

template <Scalar T>
bool approximately_equal(const Matrix<T>& a, const Matrix<T>& b, const TolerancePolicy& tol) {
  return approximately_zero(Matrix<T>(a - b), std::max(frobenius_norm(a), frobenius_norm(b)), tol);
}

std::string scalar_str(const Exact& z) { return z.str(); }
std::string scalar_str(const Complex& z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

Claim rank_sequence_claim(const Matrix<Exact>& m, const std::string& label, std::vector<int> expected) {
  return {"rank sequence of " + label + " is " + join(expected),
          [m, expected](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const auto seq = rank_sequence(convert<T>(m), tol);
              return ClaimOutcome{seq.terms == expected, "computed " + join(seq.terms)};
            });
          }};
}

Claim similarity_claim(const Matrix<Exact>& a, const Matrix<Exact>& b, bool expected) {
  return {expected ? "AB and BA are similar" : "AB and BA are not similar",
          [a, b, expected](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const auto v = decide_product_similarity(convert<T>(a), convert<T>(b), tol);
              return ClaimOutcome{v.similar == expected, "AB " + join(v.seq_ab.terms) + ", BA " + join(v.seq_ba.terms) +
                                                             ", reason " + std::string(to_string(v.reason))};
            });
          }};
}

template <class Pred>
Claim predicate_claim(const Matrix<Exact>& m, std::string statement, Pred pred) {
  return {std::move(statement), [m, pred](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const bool ok = pred(convert<T>(m), tol);
              return ClaimOutcome{ok, ok ? "holds" : "fails"};
            });
          }};
}

Claim intertwiner_claim(const Matrix<Exact>& m1, const Matrix<Exact>& m2, std::string statement) {
  return {std::move(statement), [m1, m2](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const auto cert = find_intertwiner(convert<T>(m1), convert<T>(m2), kCatalogSeed, kDefaultAttempts, tol);
              if (!cert) return ClaimOutcome{false, "no invertible intertwiner found"};
              std::ostringstream os;
              os << "residual " << cert->residual();
              if (cert->check.determinant) os << ", determinant " << cert->check.determinant->str();
              if (cert->check.condition) os << ", condition " << *cert->check.condition;
              return ClaimOutcome{cert->check.passed(), os.str()};
            });
          }};
}

Claim screen_claim(const Matrix<Exact>& m1, const Matrix<Exact>& m2, std::string statement) {
  return {std::move(statement), [m1, m2](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const auto report = word_trace_screen(convert<T>(m1), convert<T>(m2), kDefaultMaxWordLength, tol);
              if (!report.distinguished) return ClaimOutcome{false, "no word up to length 6 separates them"};
              return ClaimOutcome{true, "word " + report.word->str() + ": " + scalar_str(report.traces->first) +
                                            " vs " + scalar_str(report.traces->second)};
            });
          }};
}

Claim probe_word_claim(const Matrix<Exact>& m1, const Matrix<Exact>& m2, std::string statement) {
  return {std::move(statement), [m1, m2](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const auto w = sextic_probe_word();
              const T t1 = trace_word(convert<T>(m1), w);
              const T t2 = trace_word(convert<T>(m2), w);
              bool differ;
              if constexpr (is_exact_v<T>) {
                differ = !(t1 == t2);
              } else {
                differ = std::abs(t1 - t2) > tol.residual_tol * std::max(1.0, std::abs(t1) + std::abs(t2));
              }
              return ClaimOutcome{differ, "traces " + scalar_str(t1) + " vs " + scalar_str(t2)};
            });
          }};
}

Claim equality_claim(const Matrix<Exact>& lhs_a, const Matrix<Exact>& lhs_b, const Matrix<Exact>& expected,
                     std::string statement) {
  return {std::move(statement), [lhs_a, lhs_b, expected](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const bool ok = approximately_equal(Matrix<T>(convert<T>(lhs_a) * convert<T>(lhs_b)), convert<T>(expected), tol);
              return ClaimOutcome{ok, ok ? "matches" : "differs"};
            });
          }};
}

Claim square_zero_claim(const Matrix<Exact>& m, bool expect_zero, std::string statement) {
  return {std::move(statement), [m, expect_zero](Backend backend, const TolerancePolicy& tol) {
            return on_backend(backend, [&]<Scalar T>() {
              const Matrix<T> mt = convert<T>(m);
              const bool zero = approximately_zero(Matrix<T>(mt * mt), frobenius_norm(mt) * frobenius_norm(mt), tol);
              return ClaimOutcome{zero == expect_zero, zero ? "square vanishes" : "square is nonzero"};
            });
          }};
}

const Exact kI = kImaginaryUnit;

Fixture two_by_two() {
  const Matrix<Exact> a{{0, 1}, {0, 0}};
  const Matrix<Exact> b{{0, 0}, {0, 1}};
  Fixture f{"two-by-two-nonsimilar", "Smallest pair with AB not similar to BA", {{"A", a}, {"B", b}}, {}};
  f.claims.push_back(rank_sequence_claim(a * b, "AB", {2, 1, 0}));
  f.claims.push_back(rank_sequence_claim(b * a, "BA", {2, 0}));
  f.claims.push_back(similarity_claim(a, b, false));
  return f;
}

Fixture hermitian_pair() {
  const Matrix<Exact> a{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  const Matrix<Exact> b = Matrix<Exact>{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}} * kI;
  Fixture f{"hermitian-pair-3x3",
            "Hermitian A, B with AB similar but not unitarily similar to BA",
            {{"A", a}, {"B", b}},
            {}};
  f.claims.push_back(predicate_claim(a, "A is Hermitian", [](const auto& m, const auto& t) { return is_hermitian(m, t); }));
  f.claims.push_back(predicate_claim(b, "B is Hermitian", [](const auto& m, const auto& t) { return is_hermitian(m, t); }));
  f.claims.push_back(similarity_claim(a, b, true));
  f.claims.push_back(intertwiner_claim(a * b, b * a, "an invertible T with T(AB) = (BA)T is found"));
  f.claims.push_back(probe_word_claim(a * b, b * a, "the word x*xxx*x*x has different traces at AB and BA"));
  f.claims.push_back(screen_claim(a * b, b * a, "AB and BA are not unitarily similar (word screen)"));
  return f;
}

Fixture transpose_pair() {
  const Matrix<Exact> a{{0, 1, 0}, {0, 0, 2}, {0, 0, 0}};
  Fixture f{"transpose-3x3", "A similar to its transpose but not unitarily", {{"A", a}, {"AT", a.transpose()}}, {}};
  f.claims.push_back(intertwiner_claim(a, a.transpose(), "an invertible T with T A = A^T T is found"));
  f.claims.push_back(screen_claim(a, a.transpose(), "A and A^T are not unitarily similar (word screen)"));
  return f;
}

Fixture hermitian_normal_pair() {
  const Matrix<Exact> a{{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}};
  const Matrix<Exact> b{{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  const Matrix<Exact> ab{{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  const Matrix<Exact> ba{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}};
  Fixture f{"hermitian-normal-4x4",
            "Minimal 0-1 pair, A Hermitian and B normal, with AB not similar to BA",
            {{"A", a}, {"B", b}, {"AB", ab}, {"BA", ba}},
            {}};
  f.claims.push_back(predicate_claim(a, "A is Hermitian", [](const auto& m, const auto& t) { return is_hermitian(m, t); }));
  f.claims.push_back(predicate_claim(b, "B is normal", [](const auto& m, const auto& t) { return is_normal(m, t); }));
  f.claims.push_back(equality_claim(a, b, ab, "A times B equals the listed AB"));
  f.claims.push_back(equality_claim(b, a, ba, "B times A equals the listed BA"));
  f.claims.push_back(square_zero_claim(ab, true, "(AB)^2 = 0"));
  f.claims.push_back(square_zero_claim(ba, false, "(BA)^2 != 0"));
  f.claims.push_back(rank_sequence_claim(ab, "AB", {4, 2, 0}));
  f.claims.push_back(rank_sequence_claim(ba, "BA", {4, 2, 1, 0}));
  f.claims.push_back(similarity_claim(a, b, false));
  return f;
}

Fixture phi_conjugator_fixture() {
  const Matrix<Exact> w = phi_conjugator<Exact>(2);
  const Matrix<Exact> x{{Exact(1) + kI, 2}, {0, -kI}};
  const Matrix<Exact> y{{0, kI}, {Exact(3), Exact(1) - kI}};
  Fixture f{"phi-conjugator",
            "W = [[I, I], [-I, I]] (n = 2) with sample X, Y for the doubling map phi",
            {{"W", w}, {"X", x}, {"Y", y}},
            {}};
  f.claims.push_back({"W^T W = 2I, so W / sqrt(2) is unitary", [w](Backend backend, const TolerancePolicy& tol) {
                        return on_backend(backend, [&]<Scalar T>() {
                          const Matrix<T> wt = convert<T>(w);
                          const bool ok = approximately_equal(Matrix<T>(wt.transpose() * wt),
                                                              Matrix<T>(Matrix<T>::identity(4) * from_int<T>(2)), tol);
                          return ClaimOutcome{ok, ok ? "holds" : "fails"};
                        });
                      }});
  f.claims.push_back({"W phi(X) W^-1 = diag(2 X1, 2i X2)", [w, x](Backend backend, const TolerancePolicy& tol) {
                        return on_backend(backend, [&]<Scalar T>() {
                          const Matrix<T> wt = convert<T>(w);
                          const Matrix<T> w_inv = wt.transpose() * from_complex<T>({0.5, 0.0});
                          const auto [x1, x2] = hermitian_parts(convert<T>(x));
                          const Matrix<T> expected =
                              direct_sum(Matrix<T>(x1 * from_int<T>(2)), Matrix<T>(x2 * from_int<T>(0, 2)));
                          const bool ok = approximately_equal(Matrix<T>(wt * phi(convert<T>(x)) * w_inv), expected, tol);
                          return ClaimOutcome{ok, ok ? "holds" : "fails"};
                        });
                      }});
  f.claims.push_back(predicate_claim(phi(x), "phi(X) is normal", [](const auto& m, const auto& t) { return is_normal(m, t); }));
  f.claims.push_back(predicate_claim(phi(y), "phi(Y) is normal", [](const auto& m, const auto& t) { return is_normal(m, t); }));
  f.claims.push_back({"phi(X) phi(Y) ~ phi(Y) phi(X) with a verified certificate",
                      [x, y](Backend backend, const TolerancePolicy& tol) {
                        return on_backend(backend, [&]<Scalar T>() {
                          const auto cert = phi_similarity(convert<T>(x), convert<T>(y), kCatalogSeed, kDefaultAttempts, tol);
                          std::ostringstream os;
                          os << "residual " << cert.residual();
                          return ClaimOutcome{cert.check.passed(), os.str()};
                        });
                      }});
  return f;
}

}  // namespace

const Matrix<Exact>& Fixture::matrix(const std::string& key) const {
  for (const auto& [name, m] : matrices) {
    if (name == key) return m;
  }
  throw std::out_of_range("fixture " + name + " has no matrix " + key);
}

std::vector<ClaimResult> Fixture::evaluate(Backend backend, const TolerancePolicy& tol) const {
  std::vector<ClaimResult> out;
  for (const auto& claim : claims) {
    ClaimResult r{claim.statement, false, ""};
    try {
      const auto outcome = claim.check(backend, tol);
      r.passed = outcome.passed;
      r.detail = outcome.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Fixture> catalog() {
  return {two_by_two(), hermitian_pair(), transpose_pair(), hermitian_normal_pair(), phi_conjugator_fixture()};
}

std::optional<Fixture> find_fixture(const std::string& name) {
  for (auto& f : catalog()) {
    if (f.name == name) return f;
  }
  return std::nullopt;
}

}  // namespace abba
