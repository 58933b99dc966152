#include <gtest/gtest.h>

#include <cmath>

#include "abba/errors.hpp"
#include "abba/linalg.hpp"
#include "abba/matrix.hpp"
#include "abba/random.hpp"
#include "abba/scalar.hpp"
#include "support/oracles.hpp"

using namespace abba;

namespace {

const Exact I = kImaginaryUnit;

Matrix<Exact> ex53_a() { return {{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}}; }
Matrix<Exact> ex53_b() { return {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}}; }

}  // namespace

TEST(GaussianRational, ArithmeticStaysInLowestTerms) {
  const Exact a(mpq_class(2, 4), mpq_class(-3, 9));
  EXPECT_EQ(a.real().get_str(), "1/2");
  EXPECT_EQ(a.imag().get_str(), "-1/3");
  const Exact q = Exact(1) / (Exact(1) + I);
  EXPECT_EQ(q, Exact(mpq_class(1, 2), mpq_class(-1, 2)));
  EXPECT_EQ(q * (Exact(1) + I), Exact(1));
  EXPECT_EQ(I * I, Exact(-1));
  EXPECT_EQ(conj(I), -I);
}

TEST(GaussianRational, ParseRational) {
  EXPECT_EQ(GaussianRational::parse_rational("-6/4"), mpq_class(-3, 2));
  EXPECT_EQ(GaussianRational::parse_rational("7"), mpq_class(7));
  EXPECT_THROW(GaussianRational::parse_rational(""), ParseError);
  EXPECT_THROW(GaussianRational::parse_rational("1/0"), ParseError);
  EXPECT_THROW(GaussianRational::parse_rational("1.5"), ParseError);
  EXPECT_THROW(GaussianRational::parse_rational("3/"), ParseError);
}

TEST(GaussianRational, FromComplexIsExact) {
  const Exact z = GaussianRational::from_complex({0.1, -2.5});
  EXPECT_EQ(z.real().get_d(), 0.1);
  EXPECT_EQ(z.imag(), mpq_class(-5, 2));
}

TEST(Matrix, TwoByTwoProducts) {
  const Matrix<Exact> a{{0, 1}, {0, 0}};
  const Matrix<Exact> b{{0, 0}, {0, 1}};
  EXPECT_EQ(a * b, (Matrix<Exact>{{0, 1}, {0, 0}}));
  EXPECT_TRUE((b * a).is_zero());
  EXPECT_EQ(Matrix<Exact>::identity(2) * a, a);
  EXPECT_THROW(a * Matrix<Exact>(3, 3), DimensionError);
}

TEST(Matrix, HermitianNormalPairProducts) {
  const Matrix<Exact> ab{{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  const Matrix<Exact> ba{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}};
  EXPECT_EQ(ex53_a() * ex53_b(), ab);
  EXPECT_EQ(ex53_b() * ex53_a(), ba);
}

TEST(Matrix, Adjoint) {
  EXPECT_EQ((Matrix<Exact>{{I}}).adjoint(), (Matrix<Exact>{{-I}}));
  const Matrix<Exact> a{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  const Matrix<Exact> b = Matrix<Exact>{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}} * I;
  EXPECT_EQ(a.adjoint(), a);
  EXPECT_EQ(b.adjoint(), b);
  Rng rng(3);
  const auto m = random_matrix<Exact>(rng, 3, 4);
  EXPECT_EQ(m.adjoint().adjoint(), m);
}

TEST(Rank, Examples) {
  const Matrix<Exact> ab = ex53_a() * ex53_b();
  EXPECT_EQ(rank(ab), 2u);
  EXPECT_EQ(rank(Matrix<Exact>(3, 3)), 0u);
  EXPECT_EQ(rank(Matrix<Exact>{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}), 2u);
  EXPECT_EQ(rank(convert<Complex>(ab)), 2u);
  EXPECT_EQ(rank(Matrix<Complex>(2, 5)), 0u);
}

TEST(Rank, MatchesMinorOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 4;
    const std::size_t cols = 1 + (trial / 4) % 4;
    // Low-rank products make rank deficiency common.
    const std::size_t inner = 1 + trial % 3;
    const Matrix<Exact> m = random_matrix<Exact>(rng, rows, inner, 2) * random_matrix<Exact>(rng, inner, cols, 2);
    ASSERT_EQ(rank(m), oracle::minor_rank(m)) << "trial " << trial;
  }
}

TEST(Rank, AdjointIdentities) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + trial % 4;
    const Matrix<Exact> m = random_matrix<Exact>(rng, 5, k) * random_matrix<Exact>(rng, k, 4);
    const auto r = rank(m);
    EXPECT_EQ(rank(m.adjoint()), r);
    EXPECT_EQ(rank(Matrix<Exact>(m.adjoint() * m)), r);
  }
}

TEST(Rank, BackendsAgreeOnSmallIntegerMatrices) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const std::size_t k = 1 + trial % n;
    Matrix<Exact> m = random_matrix<Exact>(rng, n, k, 2) * random_matrix<Exact>(rng, k, n, 2);
    // Keep entries within magnitude 8.
    bool small = true;
    for (const auto& e : m.entries()) small = small && std::abs(e.real().get_d()) <= 8 && std::abs(e.imag().get_d()) <= 8;
    if (!small) continue;
    EXPECT_EQ(rank(m), rank(convert<Complex>(m))) << "trial " << trial;
  }
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace_basis(Matrix<Exact>::identity(3)).empty());
  EXPECT_EQ(nullspace_basis(Matrix<Exact>(3, 3)).size(), 3u);
  const Matrix<Exact> ba = ex53_b() * ex53_a();
  const auto basis = nullspace_basis(ba);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_TRUE((ba * v).is_zero());
}

TEST(Nullspace, FloatResiduals) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix<Complex> m = random_matrix<Complex>(rng, 6, 3) * random_matrix<Complex>(rng, 3, 6);
    const auto basis = nullspace_basis(m);
    ASSERT_EQ(basis.size(), 3u);
    for (const auto& v : basis) EXPECT_LE(frobenius_norm(Matrix<Complex>(m * v)), 1e-10 * frobenius_norm(m) * frobenius_norm(v));
  }
}

TEST(SolveLinear, Examples) {
  const auto x = solve_linear(Matrix<Exact>{{1}}, Matrix<Exact>{{1}});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Matrix<Exact>{{1}}));
  EXPECT_FALSE(solve_linear(Matrix<Exact>{{0}}, Matrix<Exact>{{1}}));
  const Matrix<Exact> a{{1, 1}, {1, 1}};
  const Matrix<Exact> b{{2}, {2}};
  const auto y = solve_linear(a, b);
  ASSERT_TRUE(y);
  EXPECT_EQ(a * *y, b);
  const auto yf = solve_linear(convert<Complex>(a), convert<Complex>(b));
  ASSERT_TRUE(yf);
  EXPECT_NEAR(std::abs((*yf)(0, 0) + (*yf)(1, 0) - 2.0), 0.0, 1e-12);
  EXPECT_THROW(solve_linear(a, Matrix<Exact>(3, 1)), DimensionError);
}

TEST(SolveLinear, NoSolutionExactlyWhenRankGrows) {
  Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const Matrix<Exact> a = random_matrix<Exact>(rng, 4, k, 2) * random_matrix<Exact>(rng, k, 3, 2);
    Matrix<Exact> b = random_matrix<Exact>(rng, 4, 2, 2);
    if (trial % 2) b = a * random_matrix<Exact>(rng, 3, 2, 2);
    const bool consistent = rank(hstack(a, b)) == rank(a);
    const auto x = solve_linear(a, b);
    EXPECT_EQ(x.has_value(), consistent);
    if (x) EXPECT_EQ(a * *x, b);
  }
}

TEST(OrthonormalRangeBasis, Examples) {
  const auto q = orthonormal_range_basis(Matrix<Complex>::identity(2));
  EXPECT_EQ(q.cols(), 2u);
  EXPECT_LE(frobenius_norm(Matrix<Complex>(q.adjoint() * q - Matrix<Complex>::identity(2))), 1e-12);

  Matrix<Complex> v{{Complex(0.6)}, {Complex(0, 0.8)}};
  const auto q1 = orthonormal_range_basis(Matrix<Complex>(v * v.adjoint()));
  ASSERT_EQ(q1.cols(), 1u);
  EXPECT_NEAR(std::abs((q1.adjoint() * v)(0, 0)), 1.0, 1e-12);

  const auto qb = orthonormal_range_basis(convert<Complex>(ex53_b()));
  ASSERT_EQ(qb.cols(), 3u);
  EXPECT_LE(frobenius_norm(Matrix<Complex>(qb.adjoint() * qb - Matrix<Complex>::identity(3))), 1e-12);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(qb(0, j)), 0.0, 1e-12);

  EXPECT_THROW(orthonormal_range_basis(ex53_b()), UnsupportedError);
}

TEST(CharacteristicPolynomial, Examples) {
  const auto id = characteristic_polynomial(Matrix<Exact>::identity(2));
  EXPECT_EQ(id, (std::vector<Exact>{1, -2, 1}));
  const auto j2 = characteristic_polynomial(Matrix<Exact>{{0, 1}, {0, 0}});
  EXPECT_EQ(j2, (std::vector<Exact>{1, 0, 0}));
  EXPECT_EQ(characteristic_polynomial(ex53_a()), (std::vector<Exact>{1, -1, -1, 1, 0}));
}

TEST(CharacteristicPolynomial, ProductsAgree) {
  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_matrix<Exact>(rng, 4, 4);
    const auto b = random_matrix<Exact>(rng, 4, 4);
    EXPECT_EQ(characteristic_polynomial(Matrix<Exact>(a * b)), characteristic_polynomial(Matrix<Exact>(b * a)));
  }
}

TEST(CharacteristicPolynomial, FloatMatchesExact) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_matrix<Exact>(rng, 4, 4, 2);
    const auto exact = characteristic_polynomial(a);
    const auto approx = characteristic_polynomial(convert<Complex>(a));
    ASSERT_EQ(exact.size(), approx.size());
    for (std::size_t k = 0; k < exact.size(); ++k) {
      EXPECT_NEAR(std::abs(exact[k].to_complex() - approx[k]), 0.0, 1e-8 * (1.0 + std::abs(exact[k].to_complex())));
    }
  }
}

TEST(Determinant, MatchesLeibniz) {
  Rng rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto m = random_matrix<Exact>(rng, n, n);
    EXPECT_EQ(determinant(m), oracle::leibniz_determinant(m));
    EXPECT_NEAR(std::abs(determinant(convert<Complex>(m)) - oracle::leibniz_determinant(m).to_complex()), 0.0,
                1e-9 * (1.0 + std::abs(oracle::leibniz_determinant(m).to_complex())));
  }
}

TEST(Svd, ReconstructsInput) {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_matrix<Complex>(rng, 3 + trial % 4, 2 + trial % 5);
    const auto svd = singular_value_decomposition(m);
    const std::size_t k = svd.u.cols();
    ASSERT_EQ(svd.sigma.size(), m.cols());
    ASSERT_EQ(k, std::min(m.rows(), m.cols()));
    Matrix<Complex> s(k, k);
    for (std::size_t i = 0; i < k; ++i) s(i, i) = svd.sigma[i];
    const Matrix<Complex> back = svd.u * s * svd.v.block(0, 0, m.cols(), k).adjoint();
    EXPECT_LE(frobenius_norm(Matrix<Complex>(back - m)), 1e-12 * frobenius_norm(m));
    EXPECT_TRUE(std::is_sorted(svd.sigma.rbegin(), svd.sigma.rend()));
  }
}

TEST(Eigenvalues, HermitianNormalPairFactor) {
  auto ev = eigenvalues(convert<Complex>(ex53_a()));
  std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
  const double expected[] = {-1, 0, 1, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(ev[i] - expected[i]), 0.0, 1e-10);
}

TEST(Eigenvalues, MatchCharacteristicPolynomialOfRandomMatrix) {
  Rng rng(20);
  const auto m = random_matrix<Complex>(rng, 6, 6);
  for (const auto lambda : eigenvalues(m)) {
    EXPECT_LE(std::abs(determinant(Matrix<Complex>(m - Matrix<Complex>::identity(6) * lambda))), 1e-8);
  }
}
