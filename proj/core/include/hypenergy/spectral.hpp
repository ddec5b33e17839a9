#pragma once

// Additive Fourier analysis on F_p with e(x) = exp(2 pi i x / p):
//   f^(xi) = sum_x f(x) e(-xi x),   f(x) = p^{-1} sum_xi f^(xi) e(xi x).
// Transforms are direct sums; there is no fast prime-length path.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hypenergy/field.hpp"

namespace hypenergy {

using Complex = std::complex<double>;

/// Values below this magnitude are treated as zero when recording support.
inline constexpr double kSupportTolerance = 1e-12;

/// A complex-valued function on F_p with its support recorded.
class WeightFn {
 public:
  WeightFn(ContextPtr ctx, std::vector<Complex> values);

  static WeightFn zero(ContextPtr ctx);
  static WeightFn indicator(const FpSet& set);
  static WeightFn delta(ContextPtr ctx, Residue x, Complex value = 1.0);
  static WeightFn constant(ContextPtr ctx, Complex value);

  const FieldContext& field() const noexcept { return *ctx_; }
  const ContextPtr& context() const noexcept { return ctx_; }
  std::uint32_t p() const noexcept { return ctx_->p(); }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<const Residue> support() const noexcept { return support_; }
  Complex operator[](Residue x) const { return values_[x]; }

  bool is_real(double tol = kSupportTolerance) const noexcept;

  double l1_norm() const noexcept;
  double l2_norm() const noexcept;
  double sup_norm() const noexcept;

  /// Pointwise product.
  friend WeightFn operator*(const WeightFn& f, const WeightFn& g);
  friend WeightFn operator+(const WeightFn& f, const WeightFn& g);

 private:
  ContextPtr ctx_;
  std::vector<Complex> values_;
  std::vector<Residue> support_;
};

/// Fourier coefficients f^(xi), xi in F_p.
class Spectrum {
 public:
  Spectrum(ContextPtr ctx, std::vector<Complex> coeffs);

  const ContextPtr& context() const noexcept { return ctx_; }
  std::uint32_t p() const noexcept { return ctx_->p(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](Residue xi) const { return coeffs_[xi]; }

 private:
  ContextPtr ctx_;
  std::vector<Complex> coeffs_;
};

/// Direct transforms cost O(p |supp f|); refuse large p unless allowed.
struct TransformLimits {
  std::uint32_t max_prime = 4096;
  /// Lift the cap; a warning is printed to stderr once per process.
  bool allow_above_cap = false;
};

/// e(k) = exp(2 pi i k / p) for k in [0, p).
std::vector<Complex> unit_roots(std::uint32_t p);

Spectrum dft(const WeightFn& f, const TransformLimits& limits = {});
WeightFn idft(const Spectrum& spec, const TransformLimits& limits = {});

/// p^{-1} sum_xi |f^(xi)|.
double wiener_norm(const Spectrum& spec);
double wiener_norm(const WeightFn& f);

/// (p^{-1} sum_xi |f^(xi)|^q)^{1/q}; q = 1 is the Wiener norm.
/// Throws std::invalid_argument for q < 1.
double spectrum_lq_norm(const Spectrum& spec, double q);
double spectrum_lq_norm(const WeightFn& f, double q);

/// f_A(x) = A(x) - |A|/p. Numerators p*A(x) - |A| are integers summing to 0.
WeightFn balanced(const FpSet& a);
std::vector<std::int64_t> balanced_numerators(const FpSet& a);

/// sum_x f(x) conj(g(x)).
Complex inner_product(const WeightFn& f, const WeightFn& g);
/// (f * g)(y) = sum_x f(x) g(y - x).
WeightFn convolve(const WeightFn& f, const WeightFn& g);

}  // namespace hypenergy
