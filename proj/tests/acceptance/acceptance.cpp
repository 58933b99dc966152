// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "abba/catalog.hpp"
#include "abba/classes.hpp"
#include "abba/linalg.hpp"
#include "abba/random.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/search.hpp"
#include "abba/similarity.hpp"
#include "abba/unitary.hpp"
#include "support/oracles.hpp"

using namespace abba;

namespace {

// Pinned bounds.
constexpr double kResidualBound = 1e-10;
constexpr double kConditionBound = 1e8;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "first failure: " << what << "; ";
    passed = passed && ok;
  }
};

using Check = std::function<void(Outcome&)>;

std::string join(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

template <Scalar T>
double relative_residual(const Matrix<T>& t, const Matrix<T>& m1, const Matrix<T>& m2) {
  const double num = frobenius_norm(Matrix<T>(t * m1 - m2 * t));
  const double den = frobenius_norm(t) * std::max(frobenius_norm(m1), frobenius_norm(m2));
  return den == 0.0 ? num : num / den;
}

double unitarity_defect(const Matrix<Complex>& u) {
  return frobenius_norm(Matrix<Complex>(u.adjoint() * u - Matrix<Complex>::identity(u.rows())));
}

bool nonincreasing_convex(const std::vector<int>& s) {
  for (std::size_t j = 1; j < s.size(); ++j) {
    if (s[j] > s[j - 1] || s[j] < 0) return false;
    if (j >= 2 && s[j - 1] - s[j] > s[j - 2] - s[j - 1]) return false;
  }
  return true;
}

const Fixture& fixture(const std::string& name) {
  static const auto all = catalog();
  for (const auto& f : all) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("no fixture " + name);
}

void ex53(Outcome& o) {
  const auto& f = fixture("hermitian-normal-4x4");
  const Matrix<Exact> a = f.matrix("A"), b = f.matrix("B");
  const Matrix<Exact> ab = a * b, ba = b * a;
  const TolerancePolicy zero{0.0, 0.0, kConditionBound};
  const auto v = decide_product_similarity(a, b, zero);
  o.require(v.seq_ab.terms == std::vector<int>{4, 2, 0}, "seq(AB) = (4,2,0)");
  o.require(v.seq_ba.terms == std::vector<int>{4, 2, 1, 0}, "seq(BA) = (4,2,1,0)");
  o.require(oracle::power_ranks(ab) == v.seq_ab.terms, "seq(AB) matches minor oracle");
  o.require(oracle::power_ranks(ba) == v.seq_ba.terms, "seq(BA) matches minor oracle");
  o.require(!v.similar, "verdict not similar");
  o.require(Matrix<Exact>(ab * ab).is_zero(), "(AB)^2 = 0");
  o.require(!Matrix<Exact>(ba * ba).is_zero(), "(BA)^2 != 0");
  o.detail << "seq(AB)=" << join(v.seq_ab.terms) << " seq(BA)=" << join(v.seq_ba.terms)
           << " (AB)^2=0 (BA)^2!=0, exact";
}

void two_by_two(Outcome& o) {
  const auto& f = fixture("two-by-two-nonsimilar");
  const auto v = decide_product_similarity(f.matrix("A"), f.matrix("B"));
  const std::set<std::vector<int>> got{v.seq_ab.terms, v.seq_ba.terms};
  o.require(got == std::set<std::vector<int>>{{2, 1, 0}, {2, 0}}, "sequences (2,1,0) vs (2,0)");
  o.require(!v.similar, "verdict not similar");
  o.detail << "seq(AB)=" << join(v.seq_ab.terms) << " seq(BA)=" << join(v.seq_ba.terms) << ", exact";
}

void hermitian_3x3(Outcome& o) {
  const auto& f = fixture("hermitian-pair-3x3");
  const Matrix<Exact> a = f.matrix("A"), b = f.matrix("B");
  o.require(is_hermitian(a) && is_hermitian(b), "A, B Hermitian");
  const Matrix<Exact> ab = a * b, ba = b * a;
  const auto screen = word_trace_screen(ab, ba);
  o.require(screen.distinguished, "screen distinguishes AB from BA");
  const auto w = TraceWord::parse("x*xxx*x*x");
  const Exact t1 = trace_word(ab, w), t2 = trace_word(ba, w);
  o.require(t1 != t2, "tr w(AB) != tr w(BA) for w = X*X^2(X*)^2X");
  const auto v = decide_product_similarity(a, b);
  o.require(v.similar, "verdict similar");
  const auto cert = find_intertwiner(ab, ba, 1);
  o.require(cert.has_value(), "intertwiner found");
  if (cert) {
    o.require(Matrix<Exact>(cert->t * ab - ba * cert->t).is_zero(), "T AB - BA T = 0 exactly");
    o.require(!oracle::leibniz_determinant(cert->t).is_zero(), "det T != 0 (Leibniz)");
    o.require(cert->check.residual == 0.0, "reported residual 0");
  }
  o.detail << "tr w(AB)=" << t1.str() << " tr w(BA)=" << t2.str() << " first word " << screen.word->str()
           << ", intertwiner exact residual 0";
}

void transpose(Outcome& o) {
  const auto& f = fixture("transpose-3x3");
  const Matrix<Exact> a = f.matrix("A");
  const Matrix<Exact> at = a.transpose();
  const auto cert = find_intertwiner(a, at, 1);
  o.require(cert.has_value(), "find_intertwiner(A, A^T) succeeds");
  if (cert) {
    o.require(Matrix<Exact>(cert->t * a - at * cert->t).is_zero(), "T A = A^T T exactly");
    o.require(!oracle::leibniz_determinant(cert->t).is_zero(), "det T != 0 (Leibniz)");
  }
  const auto screen = word_trace_screen(a, at, 6);
  o.require(screen.distinguished, "word_trace_screen(A, A^T, 6) distinguishes");
  if (screen.distinguished) {
    o.require(trace_word(a, *screen.word) != trace_word(at, *screen.word), "traces differ on reported word");
    o.detail << "word " << screen.word->str() << " traces " << screen.traces->first.str() << " vs "
             << screen.traces->second.str();
  }
}

template <class MakeA, class MakeB>
void construction_suite(Outcome& o, std::uint64_t seed, MakeA make_a, MakeB make_b) {
  double worst_res = 0.0, worst_cond = 0.0;
  int ok = 0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    auto rng = trial_rng(seed, trial);
    const std::size_t n = 3 + trial % 6;
    const std::size_t ra = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    const std::size_t rb = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    const Matrix<Complex> a = make_a(rng, n, ra);
    const Matrix<Complex> b = make_b(rng, n, rb);
    const Matrix<Complex> ab = a * b, ba = b * a;
    try {
      const auto cert = construct_similarity_psd_ep(a, b);
      const double res = relative_residual(cert.t, ab, ba);
      const double cond = condition_number(cert.t);
      worst_res = std::max(worst_res, res);
      worst_cond = std::max(worst_cond, cond);
      if (res <= kResidualBound && cond <= kConditionBound) {
        ++ok;
      } else {
        o.require(false, "trial " + std::to_string(trial) + " residual " + std::to_string(res) + " cond " +
                             std::to_string(cond));
      }
    } catch (const std::exception& e) {
      o.require(false, "trial " + std::to_string(trial) + " threw: " + e.what());
    }
  }
  o.detail << ok << "/100 certificates, max residual " << worst_res << " (<= " << kResidualBound
           << "), max condition " << worst_cond << " (<= " << kConditionBound << "), float";
}

void psd_normal(Outcome& o) {
  construction_suite(
      o, 61, [](Rng& r, std::size_t n, std::size_t k) { return random_psd<Complex>(r, n, k); },
      [](Rng& r, std::size_t n, std::size_t k) { return random_normal<Complex>(r, n, k); });
}

void realpart_ep(Outcome& o) {
  construction_suite(
      o, 62,
      [&o](Rng& r, std::size_t n, std::size_t k) {
        auto a = random_realpart_psd<Complex>(r, n, k);
        o.require(realpart_psd_same_rank(a), "generated A has PSD real part of equal rank");
        return a;
      },
      [&o](Rng& r, std::size_t n, std::size_t k) {
        auto b = random_ep<Complex>(r, n, k);
        o.require(is_ep(b), "generated B is EP");
        return b;
      });
}

void normal_rank_equal(Outcome& o) {
  int ok = 0;
  for (std::size_t trial = 0; trial < 500; ++trial) {
    auto rng = trial_rng(63, trial);
    const std::size_t n = 1 + trial % 6;
    const auto a = random_normal<Exact>(rng, n, std::uniform_int_distribution<std::size_t>(0, n)(rng));
    const auto b = random_normal<Exact>(rng, n, std::uniform_int_distribution<std::size_t>(0, n)(rng));
    const Matrix<Exact> ab = a * b, ba = b * a;
    const bool eq = n <= 4 ? oracle::minor_rank(ab) == oracle::minor_rank(ba) : rank(ab) == rank(ba);
    ok += eq;
    o.require(eq, "trial " + std::to_string(trial));
  }
  o.detail << ok << "/500 pairs with rank(AB) = rank(BA), exact (minor oracle for n <= 4)";
}

void hermitian_similar(Outcome& o) {
  int ok = 0;
  for (std::size_t trial = 0; trial < 500; ++trial) {
    auto rng = trial_rng(64, trial);
    const std::size_t n = 1 + trial % 6;
    const auto a = random_hermitian<Exact>(rng, n, std::uniform_int_distribution<std::size_t>(0, n)(rng));
    const auto b = random_hermitian<Exact>(rng, n, std::uniform_int_distribution<std::size_t>(0, n)(rng));
    const bool sim = decide_product_similarity(a, b).similar;
    ok += sim;
    o.require(sim, "trial " + std::to_string(trial));
  }
  o.detail << ok << "/500 Hermitian pairs similar, exact";
}

void corollary_suites(Outcome& o) {
  int low_rank = 0, three = 0;
  for (std::size_t trial = 0; trial < 500; ++trial) {
    auto rng = trial_rng(65, trial);
    const std::size_t n = 3 + trial % 4;
    const auto a = random_normal<Exact>(rng, n, std::uniform_int_distribution<std::size_t>(0, 2)(rng));
    const auto b = random_normal<Exact>(rng, n, std::uniform_int_distribution<std::size_t>(0, n)(rng));
    const bool sim = decide_product_similarity(a, b).similar;
    low_rank += sim;
    o.require(sim, "rank <= 2 trial " + std::to_string(trial));
  }
  for (std::size_t trial = 0; trial < 500; ++trial) {
    auto rng = trial_rng(66, trial);
    const auto a = random_normal<Exact>(rng, 3, std::uniform_int_distribution<std::size_t>(0, 3)(rng));
    const auto b = random_normal<Exact>(rng, 3, std::uniform_int_distribution<std::size_t>(0, 3)(rng));
    const bool sim = decide_product_similarity(a, b).similar;
    three += sim;
    o.require(sim, "3x3 trial " + std::to_string(trial));
  }
  std::size_t findings = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    const SearchSpec spec{Family::normal, n, {RankConstraint::Kind::at_most, 2}, 500, 67 + n, Backend::exact};
    findings += search_counterexample(spec).size();
  }
  findings += search_counterexample(SearchSpec{Family::normal, 3, {}, 500, 71, Backend::exact}).size();
  o.require(findings == 0, "search findings = 0");
  o.detail << "rank<=2 " << low_rank << "/500, 3x3 " << three << "/500, search findings " << findings
           << " over 2500 trials, exact";
}

void minimal_analysis(Outcome& o) {
  const auto got = minimal_counterexample_analysis();
  std::set<std::pair<std::vector<int>, std::vector<int>>> got_set(got.begin(), got.end());
  o.require(got.size() == 1 && got_set == std::set<std::pair<std::vector<int>, std::vector<int>>>{
                                              {{4, 2, 0}, {4, 2, 1, 0}}},
            "exactly {(4,2,0), (4,2,1,0)}");
  // Independent derivation from the brute-force enumeration.
  const auto all = oracle::brute_force_sequences(4, 2);
  std::set<std::pair<std::vector<int>, std::vector<int>>> expected;
  for (const auto& s : all) {
    for (const auto& t : all) {
      if (s < t && s.size() > 1 && t.size() > 1 && s[1] == t[1] && s[1] != 3 && s.back() == t.back()) {
        expected.insert({s, t});
      }
    }
  }
  o.require(got_set == expected, "agrees with brute-force enumeration");
  for (const auto& [s, t] : got) o.detail << join(s) << " vs " << join(t) << " ";
  o.detail << "(" << got.size() << " pair)";
}

void phi_suite(Outcome& o) {
  double worst = 0.0;
  int ok = 0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    auto rng = trial_rng(72, trial);
    const std::size_t n = 1 + trial % 4;
    bool good = true;
    double res = 0.0;
    try {
      if (trial % 2 == 0) {
        const auto x = random_matrix<Exact>(rng, n, n, 2), y = random_matrix<Exact>(rng, n, n, 2);
        const auto px = phi(x), py = phi(y);
        good = is_normal(px) && is_normal(py);
        const auto cert = phi_similarity(x, y, trial);
        res = relative_residual(cert.t, Matrix<Exact>(px * py), Matrix<Exact>(py * px));
        good = good && !determinant(cert.t).is_zero();
      } else {
        const auto x = random_matrix<Complex>(rng, n, n), y = random_matrix<Complex>(rng, n, n);
        const auto px = phi(x), py = phi(y);
        good = is_normal(px) && is_normal(py);
        const auto cert = phi_similarity(x, y, trial);
        res = relative_residual(cert.t, Matrix<Complex>(px * py), Matrix<Complex>(py * px));
        good = good && condition_number(cert.t) <= kConditionBound;
      }
    } catch (const std::exception& e) {
      o.require(false, "trial " + std::to_string(trial) + " threw: " + e.what());
      continue;
    }
    good = good && res <= kResidualBound;
    worst = std::max(worst, res);
    ok += good;
    o.require(good, "trial " + std::to_string(trial));
  }
  o.detail << ok << "/100 pairs (n <= 4, half exact, half float), max residual " << worst << " (<= "
           << kResidualBound << ")";
}

void unitary_suites(Outcome& o) {
  int two = 0;
  for (std::size_t trial = 0; trial < 200; ++trial) {
    auto rng = trial_rng(73, trial);
    const auto a = random_normal<Complex>(rng, 2, trial % 3);
    const auto b = random_normal<Complex>(rng, 2, (trial / 3) % 3);
    const bool same = decide_unitary_2x2(Matrix<Complex>(a * b), Matrix<Complex>(b * a));
    two += same;
    o.require(same, "2x2 trial " + std::to_string(trial));
  }
  int witnesses = 0, commuting = 0;
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 200; ++trial) {
    auto rng = trial_rng(74, trial);
    const std::size_t n = 2 + trial % 5;
    Matrix<Complex> a, b;
    if (trial % 5 == 4) {
      // v in ker B, so AB = BA = 0.
      b = random_normal<Complex>(rng, n, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
      const auto ker = nullspace_basis(b);
      Matrix<Complex> v = ker.front();
      v = v * Complex(1.0 / frobenius_norm(v));
      a = v * v.adjoint() * Complex(1.5, -0.5);
    } else {
      a = random_normal<Complex>(rng, n, trial % 10 == 9 ? 0 : 1);
      b = random_normal<Complex>(rng, n, std::uniform_int_distribution<std::size_t>(1, n)(rng));
    }
    const Matrix<Complex> ab = a * b, ba = b * a;
    const double scale = std::max({frobenius_norm(ab), frobenius_norm(ba), 1e-300});
    const auto r = rank_one_normal_unitary(a, b);
    double res = 0.0;
    bool good = true;
    if (const auto* w = std::get_if<RankOneUnitaryWitness>(&r)) {
      res = frobenius_norm(Matrix<Complex>(ba * w->u - w->u * ab)) / scale;
      good = unitarity_defect(w->u) <= kResidualBound;
      ++witnesses;
    } else {
      // Identity works; AB and BA both vanish.
      res = std::max(frobenius_norm(ab), frobenius_norm(ba)) /
            std::max(frobenius_norm(a) * frobenius_norm(b), 1.0);
      ++commuting;
    }
    good = good && res <= kResidualBound;
    worst = std::max(worst, res);
    o.require(good, "rank-one trial " + std::to_string(trial));
  }
  o.require(commuting > 0, "Commuting branch covered");
  o.detail << "2x2 " << two << "/200; rank-one " << witnesses << " unitary + " << commuting
           << " commuting of 200, max residual " << worst << " (<= " << kResidualBound << ")";
}

void rank_sequence_properties(Outcome& o) {
  int valid = 0, oracle_checked = 0;
  for (std::size_t trial = 0; trial < 1000; ++trial) {
    auto rng = trial_rng(75, trial);
    const std::size_t n = 1 + trial % 6;
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    Matrix<Exact> m = random_matrix<Exact>(rng, n, k, 2) * random_matrix<Exact>(rng, k, n, 2);
    if (trial % 2) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j + (trial % 4 == 1 ? 0 : 1) <= i && j < n; ++j) m(i, j) = 0;
      }
    }
    const auto seq = rank_sequence(m).terms;
    const bool ok = nonincreasing_convex(seq) && is_valid_rank_sequence(seq) && seq.front() == static_cast<int>(n);
    valid += ok;
    o.require(ok, "random trial " + std::to_string(trial) + " " + join(seq));
    if (n <= 4) {
      ++oracle_checked;
      o.require(oracle::power_ranks(m) == seq, "oracle mismatch trial " + std::to_string(trial));
    }
  }
  std::size_t round_trips = 0;
  for (int n = 0; n <= 8; ++n) {
    for (const auto& s : oracle::brute_force_sequences(n, n)) {
      const auto back = rank_sequence(realize_rank_sequence(s)).terms;
      o.require(back == s, "round trip " + join(s));
      ++round_trips;
    }
  }
  o.detail << valid << "/1000 random valid (" << oracle_checked << " checked against minor oracle); "
           << round_trips << " sequences with n <= 8 round-trip";
}

void backend_agreement(Outcome& o) {
  std::size_t verdicts = 0, claims = 0;
  for (const auto& f : catalog()) {
    const auto ex = f.evaluate(Backend::exact);
    const auto fl = f.evaluate(Backend::floating);
    o.require(ex.size() == fl.size(), f.name + " claim count");
    for (std::size_t i = 0; i < std::min(ex.size(), fl.size()); ++i) {
      o.require(ex[i].passed == fl[i].passed, f.name + ": " + ex[i].statement);
      ++claims;
    }
    std::vector<std::string> keys;
    for (const auto& [k, m] : f.matrices) keys.push_back(k);
    for (std::size_t i = 0; i < f.matrices.size(); ++i) {
      for (std::size_t j = 0; j < f.matrices.size(); ++j) {
        const auto& a = f.matrices[i].second;
        const auto& b = f.matrices[j].second;
        if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) continue;
        const auto ve = decide_product_similarity(a, b);
        const auto vf = decide_product_similarity(convert<Complex>(a), convert<Complex>(b));
        o.require(ve.similar == vf.similar && ve.seq_ab.terms == vf.seq_ab.terms &&
                      ve.seq_ba.terms == vf.seq_ba.terms,
                  f.name + " decide(" + f.matrices[i].first + ", " + f.matrices[j].first + ")");
        const auto se = word_trace_screen(a, b);
        const auto sf = word_trace_screen(convert<Complex>(a), convert<Complex>(b));
        o.require(se.distinguished == sf.distinguished &&
                      (!se.distinguished || se.word->str() == sf.word->str()),
                  f.name + " screen(" + f.matrices[i].first + ", " + f.matrices[j].first + ")");
        ++verdicts;
      }
    }
  }
  o.detail << verdicts << " ordered matrix pairs (verdict, sequences, screen) and " << claims
           << " claims agree across backends";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"hermitian-normal-4x4 fixture: sequences, verdict, (AB)^2 = 0 != (BA)^2", ex53},
      {"2x2 fixture: not similar, (2,1,0) vs (2,0)", two_by_two},
      {"Hermitian 3x3 fixture: screen distinguishes, similar, exact intertwiner", hermitian_3x3},
      {"transpose fixture: A ~ A^T with certificate, screen distinguishes", transpose},
      {"PSD A, normal B: 100 constructive certificates", psd_normal},
      {"PSD real part A, EP B: 100 constructive certificates", realpart_ep},
      {"normal pairs: rank(AB) = rank(BA), 500 pairs", normal_rank_equal},
      {"Hermitian pairs: AB ~ BA, 500 pairs", hermitian_similar},
      {"normal rank <= 2 and 3x3: 500 + 500 similar, search finds nothing", corollary_suites},
      {"minimal counterexample analysis: exactly {(4,2,0), (4,2,1,0)}", minimal_analysis},
      {"phi: normal images and similarity certificates, 100 pairs", phi_suite},
      {"unitary: 200 2x2 normal pairs, 200 rank-one witnesses", unitary_suites},
      {"rank sequences: 1000 random valid, round trip for n <= 8", rank_sequence_properties},
      {"backend agreement on all fixtures", backend_agreement},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.passed;
    std::printf("%s [%02zu] %s :: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
