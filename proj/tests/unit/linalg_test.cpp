#include <gtest/gtest.h>

#include <algorithm>

#include "lca/linalg.hpp"
#include "properties.hpp"

namespace lca {
namespace {

TEST(Nullspace, IdentitySystemHasNoSolutions) {
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < 4; ++i) rows.push_back({{i, Rational(1)}});
  EXPECT_TRUE(nullspace(rows, 4).empty());
}

TEST(Nullspace, EmptySystemIsEverything) {
  const auto basis = nullspace({}, 5);
  ASSERT_EQ(basis.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(basis[i], (SparseVector{{i, Rational(1)}}));
}

TEST(Nullspace, SkewRowsOfLinearAnsatz) {
  // 2·c0 = 0 and 2·c1 - c2 = 0 leave (0, 1, 2).
  const std::vector<SparseVector> rows{{{0, Rational(2)}}, {{1, Rational(2)}, {2, Rational(-1)}}};
  const auto basis = nullspace(rows, 3);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], (SparseVector{{1, Rational(1, 2)}, {2, Rational(1)}}));
}

TEST(EchelonBasis, ReduceAndInsert) {
  EchelonBasis e(3);
  EXPECT_TRUE(e.insert({{0, Rational(2)}, {1, Rational(4)}}));
  EXPECT_FALSE(e.insert({{0, Rational(-1)}, {1, Rational(-2)}}));
  EXPECT_TRUE(e.insert({{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_EQ(e.rank(), 2u);
  // RREF: rows (1, 0, -2) and (0, 1, 1).
  EXPECT_EQ(e.rows().at(0), (SparseVector{{0, Rational(1)}, {2, Rational(-2)}}));
  EXPECT_EQ(e.rows().at(1), (SparseVector{{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_TRUE(e.reduce({{0, Rational(1)}, {1, Rational(3)}, {2, Rational(1)}}).empty());
  EXPECT_THROW(e.insert({{7, Rational(1)}}), std::out_of_range);
}

TEST(EchelonBasis, AxpyDropsCancellations) {
  SparseVector a{{0, Rational(1)}, {1, Rational(2)}};
  axpy(a, Rational(-2), SparseVector{{1, Rational(1)}, {3, Rational(1, 2)}});
  EXPECT_EQ(a, (SparseVector{{0, Rational(1)}, {3, Rational(-1)}}));
  EXPECT_EQ(dot(a, SparseVector{{3, Rational(4)}}), Rational(-4));
}

TEST(EchelonBasis, RandomSystemsAgainstBareissOracle) {
  testing::RandomSource rng(testing::seed_from_env());
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t columns = static_cast<std::size_t>(rng.integer(1, 9));
    const std::size_t row_count = static_cast<std::size_t>(rng.integer(0, 10));
    std::vector<SparseVector> rows;
    for (std::size_t r = 0; r < row_count; ++r) {
      SparseVector row;
      for (std::size_t c = 0; c < columns; ++c)
        if (rng.integer(0, 2) == 0) {
          Rational v = rng.rational(3);
          if (!is_zero(v)) row.emplace(c, v);
        }
      // Occasionally a dependent row.
      if (!rows.empty() && rng.integer(0, 3) == 0) {
        row = rows.back();
        axpy(row, rng.rational(), rows.front());
      }
      rows.push_back(row);
    }

    EchelonBasis echelon(columns);
    for (const auto& row : rows) echelon.insert(row);
    ASSERT_EQ(echelon.rank(), testing::bareiss_rank(rows, columns)) << "trial " << trial;

    const auto basis = echelon.nullspace();
    ASSERT_EQ(basis.size() + echelon.rank(), columns);
    for (const auto& v : basis)
      for (const auto& row : rows) ASSERT_TRUE(is_zero(dot(row, v)));
    EXPECT_EQ(testing::bareiss_rank(basis, columns), basis.size());

    // The stored RREF does not depend on the insertion order.
    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    EchelonBasis other(columns);
    for (const auto& row : shuffled) other.insert(row);
    EXPECT_EQ(other.rows(), echelon.rows());
  }
}

}  // namespace
}  // namespace lca
