#include "hypenergy/field.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace hypenergy {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FieldContext::FieldContext(std::int64_t p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument(fmt::format("modulus {} is not an odd prime", p));
  if (p > static_cast<std::int64_t>(kMaxPrime))
    throw std::invalid_argument(
        fmt::format("modulus {} exceeds the table limit {}", p, kMaxPrime));
  if (!is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument(fmt::format("modulus {} is not prime", p));
  p_ = static_cast<std::uint32_t>(p);

  // Smallest element whose order is exactly p - 1.
  const auto factors = distinct_prime_factors(p_ - 1);
  for (Residue g = 2; g < p_; ++g) {
    bool generator = true;
    for (auto q : factors) {
      if (pow(g, (p_ - 1) / q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      root_ = g;
      break;
    }
  }

  exp_.resize(p_ - 1);
  dlog_.assign(p_, 0);
  Residue x = 1;
  for (std::uint32_t k = 0; k + 1 < p_; ++k) {
    exp_[k] = x;
    dlog_[x] = k;
    x = mul(x, root_);
  }

  inv_.assign(p_, 0);
  for (std::uint32_t k = 0; k + 1 < p_; ++k) {
    // (g^k)^{-1} = g^{p-1-k}
    inv_[exp_[k]] = exp_[(p_ - 1 - k) % (p_ - 1)];
  }
}

Residue FieldContext::pow(Residue x, std::uint64_t e) const noexcept {
  std::uint64_t result = 1 % p_;
  std::uint64_t base = x % p_;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

Residue FieldContext::inv(Residue x) const {
  if (x % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return inv_[x % p_];
}

std::uint32_t FieldContext::dlog(Residue x) const {
  if (x % p_ == 0) throw std::domain_error("discrete logarithm of zero");
  return dlog_[x % p_];
}

ContextPtr make_context(std::int64_t p) { return std::make_shared<const FieldContext>(p); }

// ---------------------------------------------------------------------------
// FpSet

FpSet::FpSet(ContextPtr ctx, std::vector<Residue> sorted_unique, int)
    : ctx_(std::move(ctx)), elems_(std::move(sorted_unique)) {
  build_index();
}

FpSet::FpSet(ContextPtr ctx, std::span<const std::int64_t> elements) : ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("FpSet requires a field context");
  elems_.reserve(elements.size());
  for (auto e : elements) elems_.push_back(ctx_->reduce(e));
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  build_index();
}

FpSet::FpSet(ContextPtr ctx, std::initializer_list<std::int64_t> elements)
    : FpSet(std::move(ctx), std::span<const std::int64_t>(elements.begin(), elements.size())) {}

FpSet FpSet::from_residues(ContextPtr ctx, std::vector<Residue> residues) {
  if (!ctx) throw std::invalid_argument("FpSet requires a field context");
  for (auto& r : residues) r %= ctx->p();
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  return FpSet(std::move(ctx), std::move(residues), 0);
}

FpSet FpSet::empty_set(ContextPtr ctx) { return FpSet(std::move(ctx), {}, 0); }

FpSet FpSet::whole_field(ContextPtr ctx) {
  std::vector<Residue> all(ctx->p());
  for (std::uint32_t i = 0; i < ctx->p(); ++i) all[i] = i;
  return FpSet(std::move(ctx), std::move(all), 0);
}

void FpSet::build_index() {
  if (ctx_->p() <= kBitmapLimit) {
    bitmap_.assign(ctx_->p(), false);
    for (auto e : elems_) bitmap_[e] = true;
  }
}

bool FpSet::contains(Residue x) const noexcept {
  if (x >= ctx_->p()) return false;
  if (!bitmap_.empty()) return bitmap_[x];
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::string FpSet::to_string() const { return fmt::format("{{{}}}", fmt::join(elems_, ",")); }

void require_same_field(const FpSet& a, const FpSet& b) {
  if (a.p() != b.p())
    throw std::invalid_argument(
        fmt::format("sets live over different fields (p = {} vs p = {})", a.p(), b.p()));
}

namespace {

template <class Op>
FpSet pairwise(const FpSet& a, const FpSet& b, Op op) {
  require_same_field(a, b);
  std::vector<bool> hit(a.p(), false);
  for (auto x : a)
    for (auto y : b) {
      Residue r;
      if (op(x, y, r)) hit[r] = true;
    }
  std::vector<Residue> out;
  for (std::uint32_t i = 0; i < a.p(); ++i)
    if (hit[i]) out.push_back(i);
  return FpSet::from_residues(a.context(), std::move(out));
}

template <class F>
FpSet map_set(const FpSet& a, F f) {
  std::vector<Residue> out;
  out.reserve(a.size());
  for (auto x : a) {
    Residue r;
    if (f(x, r)) out.push_back(r);
  }
  return FpSet::from_residues(a.context(), std::move(out));
}

}  // namespace

FpSet sumset(const FpSet& a, const FpSet& b) {
  const auto& F = a.field();
  return pairwise(a, b, [&](Residue x, Residue y, Residue& r) { r = F.add(x, y); return true; });
}

FpSet difference_set(const FpSet& a, const FpSet& b) {
  const auto& F = a.field();
  return pairwise(a, b, [&](Residue x, Residue y, Residue& r) { r = F.sub(x, y); return true; });
}

FpSet product_set(const FpSet& a, const FpSet& b) {
  const auto& F = a.field();
  return pairwise(a, b, [&](Residue x, Residue y, Residue& r) { r = F.mul(x, y); return true; });
}

FpSet quotient_set(const FpSet& a, const FpSet& b) {
  const auto& F = a.field();
  return pairwise(a, b, [&](Residue x, Residue y, Residue& r) {
    if (y == 0) return false;
    r = F.mul(x, F.inv(y));
    return true;
  });
}

FpSet dilate(const FpSet& a, std::int64_t m) {
  const auto& F = a.field();
  const Residue mm = F.reduce(m);
  return map_set(a, [&](Residue x, Residue& r) { r = F.mul(mm, x); return true; });
}

FpSet translate(const FpSet& a, std::int64_t t) {
  const auto& F = a.field();
  const Residue tt = F.reduce(t);
  return map_set(a, [&](Residue x, Residue& r) { r = F.add(x, tt); return true; });
}

FpSet negate(const FpSet& a) {
  const auto& F = a.field();
  return map_set(a, [&](Residue x, Residue& r) { r = F.neg(x); return true; });
}

FpSet inverse_set(const FpSet& a) {
  const auto& F = a.field();
  return map_set(a, [&](Residue x, Residue& r) {
    if (x == 0) return false;
    r = F.inv(x);
    return true;
  });
}

FpSet intersection(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  std::vector<Residue> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FpSet::from_residues(a.context(), std::move(out));
}

FpSet set_union(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  std::vector<Residue> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FpSet::from_residues(a.context(), std::move(out));
}

FpSet interval(ContextPtr ctx, std::int64_t start, std::size_t length) {
  return arithmetic_progression(std::move(ctx), start, 1, length);
}

FpSet arithmetic_progression(ContextPtr ctx, std::int64_t start, std::int64_t step,
                             std::size_t length) {
  if (length > ctx->p())
    throw std::invalid_argument(
        fmt::format("progression length {} exceeds p = {}", length, ctx->p()));
  std::vector<Residue> out;
  out.reserve(length);
  const Residue s = ctx->reduce(start), d = ctx->reduce(step);
  Residue x = s;
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(x);
    x = ctx->add(x, d);
  }
  return FpSet::from_residues(std::move(ctx), std::move(out));
}

FpSet geometric_progression(ContextPtr ctx, std::int64_t g, std::size_t length) {
  std::vector<Residue> out;
  out.reserve(length);
  const Residue gg = ctx->reduce(g);
  Residue x = 1;
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(x);
    x = ctx->mul(x, gg);
  }
  return FpSet::from_residues(std::move(ctx), std::move(out));
}

FpSet multiplicative_subgroup(ContextPtr ctx, std::uint32_t d) {
  if (d == 0 || (ctx->p() - 1) % d != 0)
    throw std::invalid_argument(
        fmt::format("subgroup order {} does not divide p - 1 = {}", d, ctx->p() - 1));
  const Residue h = ctx->pow(ctx->primitive_root(), (ctx->p() - 1) / d);
  return geometric_progression(std::move(ctx), h, d);
}

FpSet random_subset(ContextPtr ctx, std::size_t n, std::uint64_t seed) {
  const std::uint32_t p = ctx->p();
  if (n > p)
    throw std::invalid_argument(fmt::format("cannot draw {} distinct residues mod {}", n, p));
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * p));
  // Partial Fisher-Yates on an implicit identity permutation.
  std::vector<Residue> perm(p);
  for (std::uint32_t i = 0; i < p; ++i) perm[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (p - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(n);
  return FpSet::from_residues(std::move(ctx), std::move(perm));
}

bool is_unit_step_progression(const FpSet& a) {
  const std::size_t n = a.size();
  if (n <= 1 || n == a.p()) return true;
  // A run of consecutive residues, possibly wrapping past p - 1, has exactly
  // one element whose predecessor is missing.
  std::size_t starts = 0;
  for (auto x : a)
    if (!a.contains(a.field().sub(x, 1))) ++starts;
  return starts == 1;
}

// ---------------------------------------------------------------------------
// Representation functions

std::uint64_t RepTable::total() const noexcept {
  std::uint64_t s = 0;
  for (auto v : values) s += v;
  return s;
}

std::uint64_t RepTable::max() const noexcept {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

RepTable rep_additive(const FpSet& a, const FpSet& b, Sign sign) {
  require_same_field(a, b);
  const auto& F = a.field();
  RepTable t{a.context(), std::vector<std::uint64_t>(F.p(), 0)};
  for (auto x : a)
    for (auto y : b) ++t.values[sign == Sign::Plus ? F.add(x, y) : F.sub(x, y)];
  return t;
}

std::vector<std::uint64_t> multiplicative_convolution(const FieldContext& ctx,
                                                      std::span<const std::uint64_t> f,
                                                      std::span<const std::uint64_t> g) {
  const std::uint32_t p = ctx.p();
  if (f.size() != p || g.size() != p)
    throw std::invalid_argument("multiplicative_convolution expects length-p inputs");
  std::vector<std::uint64_t> h(p, 0);

  std::uint64_t mass_f = 0, mass_g = 0;
  for (auto v : f) mass_f += v;
  for (auto v : g) mass_g += v;
  h[0] = f[0] * mass_g + mass_f * g[0] - f[0] * g[0];

  // Sparse supports in dlog coordinates on Z/(p-1).
  std::vector<std::pair<std::uint32_t, std::uint64_t>> fs, gs;
  for (std::uint32_t x = 1; x < p; ++x) {
    if (f[x]) fs.emplace_back(ctx.dlog(x), f[x]);
    if (g[x]) gs.emplace_back(ctx.dlog(x), g[x]);
  }
  const std::uint32_t n = p - 1;
  std::vector<std::uint64_t> conv(n, 0);
  for (auto [i, fv] : fs)
    for (auto [j, gv] : gs) {
      std::uint32_t k = i + j;
      if (k >= n) k -= n;
      conv[k] += fv * gv;
    }
  for (std::uint32_t k = 0; k < n; ++k) h[ctx.exp(k)] = conv[k];
  return h;
}

RepTable rep_multiplicative(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  const auto& F = a.field();
  std::vector<std::uint64_t> ia(F.p(), 0), ib(F.p(), 0);
  for (auto x : a) ia[x] = 1;
  for (auto y : b) ib[y] = 1;
  return RepTable{a.context(), multiplicative_convolution(F, ia, ib)};
}

BigInt sum_of_squares(std::span<const std::uint64_t> values) {
  BigInt s = 0;
  for (auto v : values) {
    if (v) s += BigInt(v) * v;
  }
  return s;
}

BigInt sum_of_powers(std::span<const std::uint64_t> values, unsigned k) {
  BigInt s = 0;
  for (auto v : values) {
    if (v) s += boost::multiprecision::pow(BigInt(v), k);
  }
  return s;
}

}  // namespace hypenergy
