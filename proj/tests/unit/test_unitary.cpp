#include <gtest/gtest.h>

#include <variant>

#include "abba/classes.hpp"
#include "abba/errors.hpp"
#include "abba/linalg.hpp"
#include "abba/random.hpp"
#include "abba/unitary.hpp"

using namespace abba;

namespace {

const Exact I = kImaginaryUnit;

Matrix<Exact> herm_a() { return {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}; }
Matrix<Exact> herm_b() { return Matrix<Exact>{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}} * I; }

double unitarity_defect(const Matrix<Complex>& u) {
  return frobenius_norm(Matrix<Complex>(u.adjoint() * u - Matrix<Complex>::identity(u.rows())));
}

}  // namespace

TEST(TraceWord, ParseAndSpell) {
  const auto w = TraceWord::parse("x*xxx*x*x");
  EXPECT_EQ(w.size(), 6u);
  EXPECT_EQ(w.str(), "x*xxx*x*x");
  EXPECT_EQ(w, sextic_probe_word());
  EXPECT_THROW(TraceWord::parse(""), ParseError);
  EXPECT_THROW(TraceWord::parse("xy"), ParseError);
  EXPECT_THROW(TraceWord::parse("*x"), ParseError);
}

TEST(TraceWord, CanonicalOrder) {
  const auto words = words_of_length(2);
  ASSERT_EQ(words.size(), 4u);
  EXPECT_EQ(words[0].str(), "xx");
  EXPECT_EQ(words[1].str(), "xx*");
  EXPECT_EQ(words[2].str(), "x*x");
  EXPECT_EQ(words[3].str(), "x*x*");
  EXPECT_EQ(words_of_length(6).size(), 64u);
}

TEST(TraceWord, Examples) {
  const Matrix<Exact> d{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  EXPECT_EQ(trace_word(d, TraceWord::parse("x")), Exact(6));
  Rng rng(51);
  const auto m = random_matrix<Exact>(rng, 3, 3);
  Exact fro(0);
  for (const auto& e : m.entries()) fro += Exact(e.norm());
  EXPECT_EQ(trace_word(m, TraceWord::parse("xx*")), fro);
}

TEST(TraceWord, HermitianPairProbeValues) {
  // Traces computed independently with a computer algebra system.
  const Matrix<Exact> ab = herm_a() * herm_b();
  const Matrix<Exact> ba = herm_b() * herm_a();
  EXPECT_EQ(ab, (Matrix<Exact>{{0, -I, I}, {I, 0, -I}, {0, 0, 0}}));
  EXPECT_EQ(ba, (Matrix<Exact>{{0, -I, 0}, {I, 0, 0}, {-I, I, 0}}));
  EXPECT_EQ(trace_word(ab, sextic_probe_word()), Exact(6));
  EXPECT_EQ(trace_word(ba, sextic_probe_word()), Exact(10));
  EXPECT_EQ(trace_word(ab, TraceWord::parse("xxx*xx*x*")), Exact(10));
  EXPECT_EQ(trace_word(ba, TraceWord::parse("xxx*xx*x*")), Exact(6));
}

TEST(WordTraceScreen, HermitianPairFirstWord) {
  const Matrix<Exact> ab = herm_a() * herm_b();
  const Matrix<Exact> ba = herm_b() * herm_a();
  const auto r = word_trace_screen(ab, ba);
  ASSERT_TRUE(r.distinguished);
  EXPECT_EQ(r.word->str(), "xxx*xx*x*");
  // With max_len 5 every short word ties and only the probe word separates.
  const auto short_only = word_trace_screen(ab, ba, 5);
  EXPECT_EQ(short_only.word->str(), "x*xxx*x*x");
  EXPECT_EQ(short_only.words_checked, 62u + 1u);

  const auto rf = word_trace_screen(convert<Complex>(ab), convert<Complex>(ba));
  ASSERT_TRUE(rf.distinguished);
  EXPECT_EQ(rf.word->str(), "xxx*xx*x*");
}

TEST(WordTraceScreen, TransposePair) {
  const Matrix<Exact> a{{0, 1, 0}, {0, 0, 2}, {0, 0, 0}};
  const auto r = word_trace_screen(a, a.transpose(), 6);
  ASSERT_TRUE(r.distinguished);
  EXPECT_EQ(r.word->str(), "xxx*xx*x*");
  EXPECT_EQ(r.traces->first, Exact(16));
  EXPECT_EQ(r.traces->second, Exact(4));
}

TEST(WordTraceScreen, EqualAndUnitarilySimilarInputs) {
  Rng rng(52);
  const auto m = random_matrix<Exact>(rng, 3, 3);
  EXPECT_FALSE(word_trace_screen(m, m, 8).distinguished);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_matrix<Exact>(rng, 3, 3);
    const auto u = random_unitary<Exact>(rng, 3);
    EXPECT_FALSE(word_trace_screen(x, Matrix<Exact>(u * x * u.adjoint())).distinguished);
    const auto xf = random_matrix<Complex>(rng, 4, 4);
    const auto uf = random_unitary<Complex>(rng, 4);
    EXPECT_FALSE(word_trace_screen(xf, Matrix<Complex>(uf * xf * uf.adjoint())).distinguished);
  }
  EXPECT_THROW(word_trace_screen(Matrix<Exact>(2, 2), Matrix<Exact>(3, 3)), DimensionError);
}

TEST(DecideUnitary2x2, Examples) {
  EXPECT_FALSE(decide_unitary_2x2(Matrix<Exact>{{0, 1}, {0, 0}}, Matrix<Exact>(2, 2)));
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_matrix<Exact>(rng, 2, 2);
    const auto u = random_unitary<Exact>(rng, 2);
    EXPECT_TRUE(decide_unitary_2x2(m, Matrix<Exact>(u * m * u.adjoint())));
    const auto a = random_normal<Complex>(rng, 2, trial % 3);
    const auto b = random_normal<Complex>(rng, 2, (trial / 3) % 3);
    EXPECT_TRUE(decide_unitary_2x2(Matrix<Complex>(a * b), Matrix<Complex>(b * a)));
  }
  EXPECT_THROW(decide_unitary_2x2(Matrix<Exact>(3, 3), Matrix<Exact>(3, 3)), DimensionError);
}

TEST(ExtendIsometry, Examples) {
  const auto id = extend_isometry_to_unitary(Matrix<Complex>(3, 0), Matrix<Complex>(3, 0));
  EXPECT_LE(frobenius_norm(Matrix<Complex>(id - Matrix<Complex>::identity(3))), 1e-14);

  const Matrix<Complex> e1{{1}, {0}};
  const Matrix<Complex> e2{{0}, {1}};
  const auto u = extend_isometry_to_unitary(e1, e2);
  EXPECT_LE(frobenius_norm(Matrix<Complex>(u * e1 - e2)), 1e-14);
  EXPECT_LE(unitarity_defect(u), 1e-14);

  EXPECT_THROW(extend_isometry_to_unitary(e1, Matrix<Complex>(e2 * Complex(2.0))), HypothesisError);
}

TEST(ExtendIsometry, RandomIsometries) {
  Rng rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t k = 1 + trial % n;
    const auto domain = random_matrix<Complex>(rng, n, k);
    const auto w = random_unitary<Complex>(rng, n);
    const Matrix<Complex> image = w * domain;
    const auto u = extend_isometry_to_unitary(domain, image);
    EXPECT_LE(frobenius_norm(Matrix<Complex>(u * domain - image)), 1e-10 * frobenius_norm(domain));
    EXPECT_LE(unitarity_defect(u), 1e-10);
  }
}

TEST(RankOneNormalUnitary, CommutingBranch) {
  const Matrix<Complex> a{{1, 0}, {0, 0}};
  const auto r = rank_one_normal_unitary(a, Matrix<Complex>{{0, 0}, {0, 1}});
  EXPECT_TRUE(std::holds_alternative<Commuting>(r));
  EXPECT_TRUE(std::holds_alternative<Commuting>(rank_one_normal_unitary(Matrix<Complex>(2, 2), a)));
}

TEST(RankOneNormalUnitary, SwapWitness) {
  const Matrix<Complex> a{{1, 0}, {0, 0}};
  const Matrix<Complex> b{{0, 1}, {1, 0}};
  const auto r = rank_one_normal_unitary(a, b);
  const auto* w = std::get_if<RankOneUnitaryWitness>(&r);
  ASSERT_NE(w, nullptr);
  const Matrix<Complex> lhs = b * a * w->u;
  const Matrix<Complex> rhs = w->u * a * b;
  EXPECT_LE(frobenius_norm(Matrix<Complex>(lhs - rhs)), 1e-12);
  EXPECT_LE(w->residual, 1e-12);
  EXPECT_LE(unitarity_defect(w->u), 1e-12);
}

TEST(RankOneNormalUnitary, RandomWitnesses) {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto a = random_normal<Complex>(rng, n, 1);
    const auto b = trial % 2 ? random_unitary<Complex>(rng, n) : random_normal<Complex>(rng, n, 1 + trial % n);
    const auto r = rank_one_normal_unitary(a, b);
    const auto* w = std::get_if<RankOneUnitaryWitness>(&r);
    ASSERT_NE(w, nullptr);
    const Matrix<Complex> ab = a * b, ba = b * a;
    EXPECT_LE(frobenius_norm(Matrix<Complex>(ba * w->u - w->u * ab)), 1e-10 * frobenius_norm(ab));
    EXPECT_LE(unitarity_defect(w->u), 1e-10);
  }
}

TEST(RankOneNormalUnitary, HypothesisErrors) {
  EXPECT_THROW(rank_one_normal_unitary(Matrix<Complex>::identity(2), Matrix<Complex>::identity(2)), HypothesisError);
  EXPECT_THROW(rank_one_normal_unitary(Matrix<Complex>{{0, 1}, {0, 0}}, Matrix<Complex>::identity(2)), HypothesisError);
}
