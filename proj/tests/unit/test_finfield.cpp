#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "schunck/error.hpp"
#include "schunck/finfield.hpp"

using namespace schunck;

namespace {

Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, f.p() - 1);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

Matrix column(Field f, const Vector& v) { return Matrix::from_columns(f, {v}, v.size()); }

}  // namespace

TEST(Field, RejectsComposite) {
  EXPECT_THROW(Field(4), InputError);
  EXPECT_THROW(Field(1), InputError);
  EXPECT_NO_THROW(Field(7));
}

TEST(Field, InverseTableMatchesBruteForce) {
  for (int p : {2, 3, 5, 7, 11}) {
    Field f(p);
    for (int a = 1; a < p; ++a) {
      int expected = 0;
      for (int b = 1; b < p; ++b)
        if (a * b % p == 1) expected = b;
      EXPECT_EQ(f.inv(a), expected);
    }
  }
}

TEST(RrefSolve, IdentitySystem) {
  Field f(3);
  auto r = rref_solve(Matrix::identity(f, 2), column(f, {1, 2}));
  ASSERT_TRUE(r.solution);
  EXPECT_EQ(r.solution->column(0), (Vector{1, 2}));
  EXPECT_EQ(r.rank, 2U);
}

TEST(RrefSolve, InconsistentZeroSystem) {
  Field f(3);
  auto r = rref_solve(Matrix(f, 2, 2), column(f, {1, 0}));
  EXPECT_FALSE(r.solution);
  EXPECT_EQ(r.rank, 0U);
}

TEST(RrefSolve, RankOneSystemAgreesWithEnumeration) {
  Field f(2);
  Matrix a = Matrix::from_rows(f, {{1, 1}, {0, 0}}, 2);
  auto r = rref_solve(a, column(f, {1, 0}));
  ASSERT_TRUE(r.solution);
  EXPECT_EQ(r.rank, 1U);
  const Vector x = r.solution->column(0);
  EXPECT_EQ((x[0] + x[1]) % 2, 1);
  int solutions = 0;
  for (const auto& v : oracle::all_vectors(2, 2))
    if ((v[0] + v[1]) % 2 == 1) ++solutions;
  EXPECT_EQ(solutions, 2);
}

TEST(RrefSolve, FieldMismatchIsInputError) {
  EXPECT_THROW(rref_solve(Matrix(Field(2), 1, 1), Matrix(Field(3), 1, 1)), InputError);
}

TEST(RrefSolve, RandomSolvableSystemsAreExact) {
  std::mt19937 rng(7);
  for (int p : {2, 3, 5}) {
    Field f(p);
    for (int trial = 0; trial < 40; ++trial) {
      Matrix a = random_matrix(f, 4, 5, rng);
      Matrix x0 = random_matrix(f, 5, 2, rng);
      Matrix b = a * x0;
      auto r = rref_solve(a, b);
      ASSERT_TRUE(r.solution);
      EXPECT_EQ(a * *r.solution, b);
    }
  }
}

TEST(KernelBasis, SpecExamples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(Field(2), 3)).cols(), 0U);
  EXPECT_EQ(kernel_basis(Matrix(Field(3), 1, 2)).cols(), 2U);
  Matrix k = kernel_basis(Matrix::from_rows(Field(3), {{1, 2}}, 2));
  ASSERT_EQ(k.cols(), 1U);
  EXPECT_EQ(k.column(0), (Vector{1, 1}));
  int count = 0;
  for (const auto& v : oracle::all_vectors(3, 2))
    if ((v[0] + 2 * v[1]) % 3 == 0) ++count;
  EXPECT_EQ(count, 3);
}

TEST(KernelBasis, RankNullityAndEnumeration) {
  std::mt19937 rng(11);
  for (int p : {2, 3}) {
    Field f(p);
    for (int trial = 0; trial < 30; ++trial) {
      Matrix a = random_matrix(f, 3, 4, rng);
      if (trial % 3 == 0) a.set(2, 0, 0), a.set(2, 1, 0), a.set(2, 2, 0), a.set(2, 3, 0);
      const Matrix k = kernel_basis(a);
      EXPECT_EQ(rank(a) + k.cols(), a.cols());
      EXPECT_TRUE((a * k).is_zero());
      std::size_t null_count = 0;
      for (const auto& v : oracle::all_vectors(p, 4))
        if (a.apply(v) == Vector(3, 0)) ++null_count;
      EXPECT_EQ(oracle::log_p(null_count, p), static_cast<int>(k.cols()));
      EXPECT_EQ(kernel_basis(a), k);
    }
  }
}

TEST(Subspace, SumAndIntersectionMatchSets) {
  std::mt19937 rng(3);
  Field f(3);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix a = random_matrix(f, 3, 2, rng);
    Matrix b = random_matrix(f, 3, 2, rng);
    Subspace sa = Subspace::of_columns(a);
    Subspace sb = Subspace::of_columns(b);
    auto set_a = oracle::span_set(3, 3, a.column_vectors());
    auto set_b = oracle::span_set(3, 3, b.column_vectors());
    oracle::VecSet meet;
    std::set_intersection(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(),
                          std::inserter(meet, meet.begin()));
    EXPECT_EQ(oracle::span_set(sa.intersect(sb)), meet);
    std::vector<Vector> gens = a.column_vectors();
    for (const auto& c : b.column_vectors()) gens.push_back(c);
    EXPECT_EQ(oracle::span_set(sa + sb), oracle::span_set(3, 3, gens));
  }
}

TEST(Subspace, EnumerationCountsMatchGaussianBinomials) {
  // Number of k-subspaces of F_3^4: 1, 40, 130, 40, 1.
  const std::vector<int> expected{1, 40, 130, 40, 1};
  for (std::size_t k = 0; k <= 4; ++k) {
    int count = 0;
    for_each_subspace(Field(3), 4, k, [&](const Subspace&) {
      ++count;
      return true;
    });
    EXPECT_EQ(count, expected[k]);
  }
  EXPECT_EQ(oracle::all_subspace_sets(3, 4).size(), 212U);
}

TEST(Charpoly, MatchesLeibnizDeterminant) {
  std::mt19937 rng(5);
  for (int p : {2, 3, 5, 7}) {
    Field f(p);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
      Matrix a = random_matrix(f, n, n, rng);
      Poly c = charpoly(a);
      ASSERT_EQ(c.degree(), static_cast<int>(n));
      ASSERT_TRUE(c.is_monic());
      for (int t = 0; t < p; ++t) {
        std::vector<oracle::Vec> m(n, oracle::Vec(n));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m[i][j] = oracle::md((i == j ? t : 0) - a.at(i, j), p);
        EXPECT_EQ(c.evaluate(t), oracle::det(m, p));
      }
      EXPECT_TRUE(evaluate(c, a).is_zero());  // Cayley-Hamilton
    }
  }
}

TEST(FactorCharpoly, SpecExamples) {
  auto f1 = factor_charpoly(Matrix::from_rows(Field(3), {{2}}, 1));
  ASSERT_EQ(f1.size(), 1U);
  EXPECT_EQ(f1[0].poly, Poly::linear(Field(3), 2));
  EXPECT_EQ(f1[0].multiplicity, 1);

  auto f2 = factor_charpoly(Matrix::identity(Field(2), 2));
  ASSERT_EQ(f2.size(), 1U);
  EXPECT_EQ(f2[0].poly, Poly(Field(2), {1, 1}));
  EXPECT_EQ(f2[0].multiplicity, 2);

  // Companion matrix of t^2 + t + 1 over F_2.
  auto f3 = factor_charpoly(Matrix::from_rows(Field(2), {{0, 1}, {1, 1}}, 2));
  ASSERT_EQ(f3.size(), 1U);
  EXPECT_EQ(f3[0].poly, Poly(Field(2), {1, 1, 1}));
  // Trial division oracle: no root in F_2 means irreducible in degree 2.
  for (int t = 0; t < 2; ++t) EXPECT_NE((t * t + t + 1) % 2, 0);

  EXPECT_THROW(factor_charpoly(Matrix(Field(2), 1, 2)), InputError);
}

TEST(FactorCharpoly, ProductReproducesCharpoly) {
  std::mt19937 rng(9);
  for (int p : {2, 3, 5}) {
    Field f(p);
    for (int trial = 0; trial < 30; ++trial) {
      Matrix a = random_matrix(f, 4, 4, rng);
      Poly prod = Poly::constant(f, 1);
      auto factors = factor_charpoly(a);
      for (const auto& pf : factors) {
        EXPECT_TRUE(pf.poly.is_monic());
        EXPECT_TRUE(is_irreducible(pf.poly));
        for (int k = 0; k < pf.multiplicity; ++k) prod = prod * pf.poly;
      }
      EXPECT_EQ(prod, charpoly(a));
      EXPECT_TRUE(std::is_sorted(factors.begin(), factors.end(),
                                 [](const PolyFactor& x, const PolyFactor& y) { return x.poly < y.poly; }));
    }
  }
}

TEST(Irreducibles, CountsMatchNecklaceFormula) {
  // Monic irreducibles over F_2: 2,1,2,3,6 in degrees 1..5; over F_3: 3,3,8,18.
  const std::vector<std::size_t> two{2, 1, 2, 3, 6};
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(monic_irreducibles(Field(2), d).size(), two[d - 1]);
  const std::vector<std::size_t> three{3, 3, 8, 18};
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(monic_irreducibles(Field(3), d).size(), three[d - 1]);
}

TEST(RootOrder, SmallCases) {
  EXPECT_EQ(root_order(Poly(Field(2), {1, 1, 1})), 3U);      // primitive cube root of unity
  EXPECT_EQ(root_order(Poly::linear(Field(3), 2)), 2U);      // -1
  EXPECT_EQ(root_order(Poly::linear(Field(5), 2)), 4U);      // 2 generates F_5^*
  EXPECT_EQ(root_order(Poly(Field(3), {1, 0, 1})), 4U);      // t^2 + 1 over F_3: i
}
