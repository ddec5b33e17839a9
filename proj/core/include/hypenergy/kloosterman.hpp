#pragma once

// Kloosterman sums K(n,m) = sum_{x != 0} e(nx + m/x) and the bilinear forms
// S(alpha, beta) = sum_{n,m} alpha(n) beta(m) K(n,m).

#include <cstdint>
#include <span>
#include <vector>

#include "hypenergy/bound_report.hpp"
#include "hypenergy/spectral.hpp"

namespace hypenergy {

/// K(t, 1) for every t, by direct summation; K(0, 0) = p - 1 is handled in
/// lookup().
class KloostermanTable {
 public:
  explicit KloostermanTable(ContextPtr ctx);

  const ContextPtr& context() const noexcept { return ctx_; }
  /// values()[t] = K(t, 1) (real).
  std::span<const double> values() const noexcept { return values_; }
  /// K(n, m) through K(n, m) = K(nm, 1) and the ramified cases.
  double lookup(std::int64_t n, std::int64_t m) const;
  /// Largest imaginary part met while summing.
  double max_imaginary() const noexcept { return max_imag_; }

 private:
  ContextPtr ctx_;
  std::vector<double> values_;
  double max_imag_ = 0;
};

/// Direct O(p) evaluation of sum_{x != 0} e(nx + m x^{-1}).
Complex kloosterman_sum(const FieldContext& F, std::int64_t n, std::int64_t m);

enum class FormMethod { Direct, Spectral };

/// Direct: double sum over the supports with table lookups.
/// Spectral: sum_{x != 0} alpha^(x) beta^(x^{-1}).
Complex bilinear_form(const WeightFn& alpha, const WeightFn& beta, FormMethod method,
                      const KloostermanTable* table = nullptr);

struct BasicBounds {
  /// |S| <= p |alpha|_2 |beta|_2.
  BoundReport plancherel;
  /// |S| <= 2 sqrt(p) |alpha|_1 |beta|_1. Not asserted when
  /// alpha(0) beta(0) != 0, since K(0, 0) = p - 1 exceeds 2 sqrt(p).
  BoundReport weil;
};

BasicBounds bound_basic(const WeightFn& alpha, const WeightFn& beta);

/// supp alpha in [N] + t1 and supp beta in [M] + t2, with [N] = {1, ..., N}.
/// The second right side is used (as a minimum with the first) only when
/// M^2 N^2 |alpha^|_{L^{4/3}}^12 < p |alpha|_2^12. Envelope 1024 (log p)^3;
/// exponent = log_p(|S| / (|alpha|_2 |beta|_2)). Throws std::invalid_argument
/// when a support leaves its progression.
BoundReport bound_thm_NM(const WeightFn& alpha, const WeightFn& beta, std::int64_t n,
                         std::int64_t m, std::int64_t t1, std::int64_t t2);

enum class WeightFamily { Interval, RandomSign, PointMass, Factorized };

const char* to_string(WeightFamily f);

struct ScanRow {
  WeightFamily family = WeightFamily::Interval;
  std::uint32_t p = 0;
  std::int64_t n = 0, m = 0, t1 = 0, t2 = 0;
  double s_abs = 0;
  double norm_product = 0;
  /// 1 - log_p(|S| / (|alpha|_2 |beta|_2)).
  double delta = 0;
  /// Singleton supports make delta meaningless.
  bool degenerate = false;
  /// |S| <= p |alpha|_2 |beta|_2.
  bool basic_holds = false;
};

/// Weights with supports [N] + t1 and [M] + t2, N = M = floor(sqrt p)
/// (1 for point masses), t1 = 0 and t2 = (p - 1)/2. Factorized weights are
/// pointwise products of a random +-1 function with an interval indicator.
std::vector<ScanRow> saving_exponent_scan(WeightFamily family, std::span<const std::uint32_t> primes,
                                          std::uint64_t seed);

}  // namespace hypenergy
