#include <gtest/gtest.h>

#include "../oracles/oracles.hpp"
#include "hypenergy/field.hpp"

using namespace hypenergy;

TEST(FieldContext, InverseTables) {
  EXPECT_EQ(make_context(7)->inv_table()[3], 5u);
  EXPECT_EQ(make_context(5)->inv_table()[4], 4u);
  for (std::uint32_t p : {3u, 11u, 101u, 2003u}) {
    const auto ctx = make_context(p);
    for (Residue x = 1; x < p; ++x) ASSERT_EQ(ctx->mul(x, ctx->inv(x)), 1u);
  }
}

TEST(FieldContext, RejectsNonPrimes) {
  EXPECT_THROW(make_context(9), std::invalid_argument);
  EXPECT_THROW(make_context(2), std::invalid_argument);
  EXPECT_THROW(make_context(1), std::invalid_argument);
  EXPECT_THROW(make_context(-7), std::invalid_argument);
}

TEST(FieldContext, DiscreteLogIsBijective) {
  const auto ctx = make_context(401);
  std::vector<bool> seen(400, false);
  for (Residue x = 1; x < 401; ++x) {
    const auto k = ctx->dlog(x);
    ASSERT_LT(k, 400u);
    EXPECT_FALSE(seen[k]);
    seen[k] = true;
    EXPECT_EQ(ctx->pow(ctx->primitive_root(), k), x);
  }
  EXPECT_THROW(ctx->dlog(0), std::domain_error);
  EXPECT_THROW(ctx->inv(0), std::domain_error);
}

TEST(FpSet, SumsetAndProducts) {
  const auto c7 = make_context(7);
  EXPECT_EQ(sumset(FpSet(c7, {1, 2}), FpSet(c7, {3})), FpSet(c7, {4, 5}));
  const auto c5 = make_context(5);
  EXPECT_EQ(sumset(FpSet(c5, {3, 4}), FpSet(c5, {3, 4})), FpSet(c5, {1, 2, 3}));
  const FpSet cubes(c7, {1, 2, 4});
  EXPECT_EQ(product_set(cubes, cubes), cubes);
}

TEST(FpSet, NormalizesInput) {
  const auto ctx = make_context(11);
  const FpSet s(ctx, {12, 1, -10, 23, 0});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(0));
  EXPECT_TRUE(s.contains(1));
  EXPECT_FALSE(s.contains(2));
}

TEST(FpSet, MixedFieldsRejected) {
  EXPECT_THROW(sumset(FpSet(make_context(7), {1}), FpSet(make_context(11), {1})),
               std::invalid_argument);
}

TEST(FpSet, Families) {
  const auto ctx = make_context(13);
  EXPECT_EQ(interval(ctx, 11, 4), FpSet(ctx, {11, 12, 0, 1}));
  EXPECT_EQ(arithmetic_progression(ctx, 1, 3, 3), FpSet(ctx, {1, 4, 7}));
  EXPECT_EQ(geometric_progression(ctx, 2, 4), FpSet(ctx, {1, 2, 4, 8}));
  EXPECT_EQ(multiplicative_subgroup(ctx, 3), FpSet(ctx, {1, 3, 9}));
  EXPECT_EQ(random_subset(ctx, 5, 42), random_subset(ctx, 5, 42));
  EXPECT_EQ(random_subset(ctx, 5, 42).size(), 5u);
  EXPECT_TRUE(is_unit_step_progression(interval(ctx, 11, 4)));
  EXPECT_FALSE(is_unit_step_progression(FpSet(ctx, {1, 3})));
}

TEST(FpSet, SetAlgebra) {
  const auto ctx = make_context(7);
  const FpSet a(ctx, {0, 1, 3});
  EXPECT_EQ(inverse_set(a), FpSet(ctx, {1, 5}));
  EXPECT_EQ(negate(a), FpSet(ctx, {0, 6, 4}));
  EXPECT_EQ(dilate(a, 2), FpSet(ctx, {0, 2, 6}));
  EXPECT_EQ(translate(a, 5), FpSet(ctx, {5, 6, 1}));
  EXPECT_EQ(intersection(a, FpSet(ctx, {1, 2, 3})), FpSet(ctx, {1, 3}));
  EXPECT_EQ(set_union(a, FpSet(ctx, {2})), FpSet(ctx, {0, 1, 2, 3}));
  EXPECT_EQ(quotient_set(FpSet(ctx, {1}), FpSet(ctx, {0, 2})), FpSet(ctx, {4}));
}

TEST(RepTable, Additive) {
  const auto ctx = make_context(101);
  const FpSet a(ctx, {1, 2, 3});
  const auto r = rep_additive(a, a, Sign::Plus);
  EXPECT_EQ(r[4], 3u);
  EXPECT_EQ(r[2], 1u);
  EXPECT_EQ(r[6], 1u);
  EXPECT_EQ(r.total(), 9u);
  const auto c7 = make_context(7);
  const auto z = rep_additive(FpSet(c7, {0}), FpSet(c7, {0}), Sign::Minus);
  EXPECT_EQ(z[0], 1u);
  EXPECT_EQ(z.total(), 1u);
}

TEST(RepTable, Multiplicative) {
  const auto c7 = make_context(7);
  const FpSet cubes(c7, {1, 2, 4});
  const auto r = rep_multiplicative(cubes, cubes);
  for (Residue x = 0; x < 7; ++x) EXPECT_EQ(r[x], (x == 1 || x == 2 || x == 4) ? 3u : 0u);

  const auto c5 = make_context(5);
  const auto z = rep_multiplicative(FpSet(c5, {0, 1}), FpSet(c5, {0, 1}));
  EXPECT_EQ(z[0], 3u);
  EXPECT_EQ(z[1], 1u);

  const auto c11 = make_context(11);
  const auto id = rep_multiplicative(FpSet(c11, {1}), interval(c11, 1, 10));
  for (Residue x = 1; x < 11; ++x) EXPECT_EQ(id[x], 1u);
  EXPECT_EQ(id[0], 0u);
}

TEST(RepTable, MultiplicativeMatchesBruteForce) {
  const auto ctx = make_context(53);
  const auto a = random_subset(ctx, 17, 3), b = random_subset(ctx, 11, 4);
  std::vector<std::uint64_t> brute(53, 0);
  for (auto x : a)
    for (auto y : b) ++brute[ctx->mul(x, y)];
  EXPECT_EQ(rep_multiplicative(a, b).values, brute);
}
