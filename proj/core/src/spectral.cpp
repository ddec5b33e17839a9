#include "hypenergy/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace hypenergy {

WeightFn::WeightFn(ContextPtr ctx, std::vector<Complex> values)
    : ctx_(std::move(ctx)), values_(std::move(values)) {
  if (!ctx_) throw std::invalid_argument("WeightFn requires a field context");
  if (values_.size() != ctx_->p())
    throw std::invalid_argument(
        fmt::format("WeightFn needs {} values, got {}", ctx_->p(), values_.size()));
  for (Residue x = 0; x < values_.size(); ++x)
    if (std::abs(values_[x]) > kSupportTolerance) support_.push_back(x);
}

WeightFn WeightFn::zero(ContextPtr ctx) {
  const auto p = ctx->p();
  return WeightFn(std::move(ctx), std::vector<Complex>(p, 0.0));
}

WeightFn WeightFn::indicator(const FpSet& set) {
  std::vector<Complex> v(set.p(), 0.0);
  for (auto x : set) v[x] = 1.0;
  return WeightFn(set.context(), std::move(v));
}

WeightFn WeightFn::delta(ContextPtr ctx, Residue x, Complex value) {
  std::vector<Complex> v(ctx->p(), 0.0);
  v.at(x) = value;
  return WeightFn(std::move(ctx), std::move(v));
}

WeightFn WeightFn::constant(ContextPtr ctx, Complex value) {
  const auto p = ctx->p();
  return WeightFn(std::move(ctx), std::vector<Complex>(p, value));
}

bool WeightFn::is_real(double tol) const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [tol](Complex z) { return std::abs(z.imag()) <= tol; });
}

double WeightFn::l1_norm() const noexcept {
  double s = 0;
  for (auto x : support_) s += std::abs(values_[x]);
  return s;
}

double WeightFn::l2_norm() const noexcept {
  double s = 0;
  for (auto x : support_) s += std::norm(values_[x]);
  return std::sqrt(s);
}

double WeightFn::sup_norm() const noexcept {
  double s = 0;
  for (auto x : support_) s = std::max(s, std::abs(values_[x]));
  return s;
}

WeightFn operator*(const WeightFn& f, const WeightFn& g) {
  if (f.p() != g.p()) throw std::invalid_argument("pointwise product over different fields");
  std::vector<Complex> v(f.p(), 0.0);
  for (auto x : f.support()) v[x] = f[x] * g[x];
  return WeightFn(f.context(), std::move(v));
}

WeightFn operator+(const WeightFn& f, const WeightFn& g) {
  if (f.p() != g.p()) throw std::invalid_argument("sum over different fields");
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto x : g.support()) v[x] += g[x];
  return WeightFn(f.context(), std::move(v));
}

Spectrum::Spectrum(ContextPtr ctx, std::vector<Complex> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ctx_->p())
    throw std::invalid_argument("Spectrum length must equal p");
}

std::vector<Complex> unit_roots(std::uint32_t p) {
  std::vector<Complex> roots(p);
  const double step = 2.0 * std::numbers::pi / p;
  for (std::uint32_t k = 0; k < p; ++k) roots[k] = std::polar(1.0, step * k);
  return roots;
}

namespace {

void check_limits(std::uint32_t p, const TransformLimits& limits) {
  if (p <= limits.max_prime) return;
  if (!limits.allow_above_cap)
    throw std::length_error(fmt::format(
        "direct transform refused for p = {} > {}; set allow_above_cap to lift the cap", p,
        limits.max_prime));
  static std::atomic<bool> warned{false};
  if (!warned.exchange(true))
    std::cerr << fmt::format("warning: direct O(p^2) transform at p = {} above cap {}\n", p,
                             limits.max_prime);
}

// out[xi] = sum_x in[x] e(sign * xi * x)
std::vector<Complex> direct_sum(std::span<const Complex> in, std::span<const Residue> support,
                                std::uint32_t p, bool negative) {
  const auto roots = unit_roots(p);
  std::vector<Complex> out(p, 0.0);
  auto index = [&](std::uint64_t xi, std::uint64_t x) {
    std::uint64_t k = xi * x % p;
    return negative && k ? p - k : k;
  };
  if (support.size() == p) {
    // Dense path.
    for (std::uint32_t xi = 0; xi < p; ++xi) {
      Complex acc = 0.0;
      for (std::uint32_t x = 0; x < p; ++x) acc += in[x] * roots[index(xi, x)];
      out[xi] = acc;
    }
  } else {
    for (std::uint32_t xi = 0; xi < p; ++xi) {
      Complex acc = 0.0;
      for (auto x : support) acc += in[x] * roots[index(xi, x)];
      out[xi] = acc;
    }
  }
  return out;
}

}  // namespace

Spectrum dft(const WeightFn& f, const TransformLimits& limits) {
  check_limits(f.p(), limits);
  return Spectrum(f.context(), direct_sum(f.values(), f.support(), f.p(), true));
}

WeightFn idft(const Spectrum& spec, const TransformLimits& limits) {
  const std::uint32_t p = spec.p();
  check_limits(p, limits);
  std::vector<Residue> support;
  for (Residue xi = 0; xi < p; ++xi)
    if (spec[xi] != Complex(0.0)) support.push_back(xi);
  auto values = direct_sum(spec.coeffs(), support, p, false);
  for (auto& v : values) v /= static_cast<double>(p);
  return WeightFn(spec.context(), std::move(values));
}

double wiener_norm(const Spectrum& spec) {
  double s = 0;
  for (auto c : spec.coeffs()) s += std::abs(c);
  return s / spec.p();
}

double wiener_norm(const WeightFn& f) { return wiener_norm(dft(f)); }

double spectrum_lq_norm(const Spectrum& spec, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument(fmt::format("L^q norm needs q >= 1, got {}", q));
  double s = 0;
  for (auto c : spec.coeffs()) s += std::pow(std::abs(c), q);
  return std::pow(s / spec.p(), 1.0 / q);
}

double spectrum_lq_norm(const WeightFn& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument(fmt::format("L^q norm needs q >= 1, got {}", q));
  return spectrum_lq_norm(dft(f), q);
}

std::vector<std::int64_t> balanced_numerators(const FpSet& a) {
  const std::int64_t p = a.p();
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  std::vector<std::int64_t> num(a.p(), -n);
  for (auto x : a) num[x] += p;
  return num;
}

WeightFn balanced(const FpSet& a) {
  const auto num = balanced_numerators(a);
  std::vector<Complex> v(a.p());
  const double p = a.p();
  for (std::size_t x = 0; x < num.size(); ++x) v[x] = static_cast<double>(num[x]) / p;
  return WeightFn(a.context(), std::move(v));
}

Complex inner_product(const WeightFn& f, const WeightFn& g) {
  if (f.p() != g.p()) throw std::invalid_argument("inner product over different fields");
  Complex s = 0.0;
  for (auto x : f.support()) s += f[x] * std::conj(g[x]);
  return s;
}

WeightFn convolve(const WeightFn& f, const WeightFn& g) {
  if (f.p() != g.p()) throw std::invalid_argument("convolution over different fields");
  const auto& F = f.field();
  std::vector<Complex> out(f.p(), 0.0);
  for (auto x : f.support())
    for (auto z : g.support()) out[F.add(x, z)] += f[x] * g[z];
  return WeightFn(f.context(), std::move(out));
}

}  // namespace hypenergy
