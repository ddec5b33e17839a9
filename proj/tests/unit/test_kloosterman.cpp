#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../oracles/oracles.hpp"
#include "hypenergy/kloosterman.hpp"

using namespace hypenergy;

namespace {

WeightFn random_on_interval(const ContextPtr& ctx, std::int64_t len, std::int64_t shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<Complex> v(ctx->p(), 0.0);
  for (std::int64_t i = 1; i <= len; ++i) v[ctx->reduce(shift + i)] = {n(rng), n(rng)};
  return WeightFn(ctx, v);
}

}  // namespace

TEST(KloostermanSum, Examples) {
  const auto c5 = make_context(5);
  EXPECT_NEAR(std::abs(kloosterman_sum(*c5, 0, 0) - Complex(4)), 0, 1e-12);
  EXPECT_NEAR(std::abs(kloosterman_sum(*c5, 1, 0) - Complex(-1)), 0, 1e-12);
  const auto k = kloosterman_sum(*c5, 1, 1);
  EXPECT_NEAR(k.real(), oracles::kKloosterman5, 1e-12);
  EXPECT_NEAR(k.imag(), 0, 1e-12);
}

TEST(KloostermanTable, WeilAndSymmetry) {
  for (std::uint32_t p : {53u, 101u}) {
    const auto ctx = make_context(p);
    const KloostermanTable table(ctx);
    EXPECT_LT(table.max_imaginary(), 1e-9);
    const double weil = 2 * std::sqrt(static_cast<double>(p));
    for (Residue n = 1; n < p; ++n)
      for (Residue m = 1; m < p; ++m) {
        ASSERT_LE(std::abs(table.lookup(n, m)), weil + 1e-9);
        ASSERT_NEAR(table.lookup(n, m), table.values()[ctx->mul(n, m)], 1e-9);
      }
    EXPECT_NEAR(table.lookup(0, 0), p - 1.0, 1e-12);
    EXPECT_NEAR(table.lookup(0, 3), -1.0, 1e-12);
    EXPECT_NEAR(table.lookup(4, 0), -1.0, 1e-12);
    EXPECT_NEAR(table.lookup(7, 9), kloosterman_sum(*ctx, 7, 9).real(), 1e-9);
  }
}

TEST(BilinearForm, Examples) {
  const auto c7 = make_context(7);
  const auto d1 = WeightFn::delta(c7, 1);
  EXPECT_NEAR(std::abs(bilinear_form(d1, d1, FormMethod::Direct) - kloosterman_sum(*c7, 1, 1)), 0, 1e-12);

  std::vector<Complex> bv = {2.0, 1.0, -3.0, 0.5, 0.0, 1.0, 4.0};
  const WeightFn beta(c7, bv);
  Complex want = 0;
  for (Residue m = 0; m < 7; ++m) want += bv[m] * (m == 0 ? 6.0 : -1.0);
  for (auto method : {FormMethod::Direct, FormMethod::Spectral})
    EXPECT_NEAR(std::abs(bilinear_form(WeightFn::delta(c7, 0), beta, method) - want), 0, 1e-9);

  const auto alpha = WeightFn::delta(c7, 1) + WeightFn::delta(c7, 3, 2.0);
  const auto beta2 = WeightFn::delta(c7, 2) + WeightFn::delta(c7, 5, -1.0);
  for (auto method : {FormMethod::Direct, FormMethod::Spectral})
    EXPECT_NEAR(std::abs(bilinear_form(alpha, beta2, method) - Complex(oracles::kBilinear7)), 0, 1e-9);
}

TEST(BilinearForm, DirectMatchesSpectral) {
  const auto ctx = make_context(101);
  const KloostermanTable table(ctx);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = random_on_interval(ctx, 10, static_cast<std::int64_t>(s), s);
    const auto b = random_on_interval(ctx, 12, 40, s + 100);
    const auto direct = bilinear_form(a, b, FormMethod::Direct, &table);
    const auto spectral = bilinear_form(a, b, FormMethod::Spectral);
    EXPECT_LE(std::abs(direct - spectral), 1e-7 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Bounds, Basic) {
  const auto ctx = make_context(101);
  const auto a = random_on_interval(ctx, 10, 3, 1), b = random_on_interval(ctx, 10, 50, 2);
  const auto basic = bound_basic(a, b);
  EXPECT_TRUE(basic.plancherel.passed);
  EXPECT_TRUE(basic.weil.passed);
  EXPECT_TRUE(basic.weil.asserted);
  const auto z = bound_basic(WeightFn::delta(ctx, 0), WeightFn::delta(ctx, 0));
  EXPECT_FALSE(z.weil.asserted);
  EXPECT_TRUE(z.plancherel.passed);
}

TEST(Bounds, NM) {
  const auto ctx = make_context(401);
  const auto pm = bound_thm_NM(WeightFn::delta(ctx, 1), WeightFn::delta(ctx, 201), 1, 1, 0, 200);
  EXPECT_TRUE(pm.passed);
  const auto a = WeightFn::indicator(interval(ctx, 1, 20));
  const auto b = WeightFn::indicator(interval(ctx, 201, 20));
  const auto rep = bound_thm_NM(a, b, 20, 20, 0, 200);
  EXPECT_TRUE(rep.passed);
  ASSERT_TRUE(rep.exponent.has_value());
  EXPECT_LT(*rep.exponent, 1.5);
  EXPECT_THROW(bound_thm_NM(a, b, 10, 20, 0, 200), std::invalid_argument);
}

TEST(Scan, Families) {
  const std::vector<std::uint32_t> primes = {53, 101};
  for (auto family : {WeightFamily::Interval, WeightFamily::RandomSign, WeightFamily::PointMass,
                      WeightFamily::Factorized}) {
    const auto rows = saving_exponent_scan(family, primes, 7);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
      EXPECT_TRUE(r.basic_holds);
      EXPECT_EQ(r.degenerate, family == WeightFamily::PointMass);
      EXPECT_EQ(r.t2, (static_cast<std::int64_t>(r.p) - 1) / 2);
    }
    EXPECT_EQ(rows[0].s_abs, saving_exponent_scan(family, primes, 7)[0].s_abs);
  }
  EXPECT_STREQ(to_string(WeightFamily::RandomSign), "random-sign");
}
