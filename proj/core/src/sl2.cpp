#include "hypenergy/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace hypenergy {

FpMat mat_mul(const FieldContext& F, const FpMat& x, const FpMat& y) {
  return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
          F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

Residue det(const FieldContext& F, const FpMat& m) {
  return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
}

FpMat adjugate(const FieldContext& F, const FpMat& m) {
  return {m.d, F.neg(m.b), F.neg(m.c), m.a};
}

FpMat scale(const FieldContext& F, const FpMat& m, Residue s) {
  return {F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)};
}

FpMat mat_inverse(const FieldContext& F, const FpMat& m) {
  const Residue dt = det(F, m);
  if (dt == 0) throw std::domain_error("singular matrix has no inverse");
  return scale(F, adjugate(F, m), F.inv(dt));
}

std::uint64_t encode(const FpMat& m, std::uint32_t p) {
  const std::uint64_t q = p;
  return ((std::uint64_t{m.a} * q + m.b) * q + m.c) * q + m.d;
}

FpMat decode(std::uint64_t key, std::uint32_t p) {
  FpMat m;
  m.d = static_cast<Residue>(key % p);
  key /= p;
  m.c = static_cast<Residue>(key % p);
  key /= p;
  m.b = static_cast<Residue>(key % p);
  m.a = static_cast<Residue>(key / p);
  return m;
}

FpMat projective_normal_form(const FieldContext& F, const FpMat& m) {
  for (Residue lead : {m.a, m.b, m.c, m.d})
    if (lead != 0) return scale(F, m, F.inv(lead));
  throw std::domain_error("zero matrix has no projective class");
}

FpMat unipotent_u(const FieldContext& F, std::int64_t a) { return {1, F.reduce(a), 0, 1}; }

FpMat lower_unipotent(const FieldContext& F, std::int64_t t) { return {1, 0, F.reduce(t), 1}; }

FpMat v_matrix(const FieldContext& F, std::int64_t b, std::int64_t lambda) {
  const Residue l = F.reduce(lambda);
  if (l == 0) throw std::invalid_argument("v_b needs lambda != 0");
  return {0, l, F.neg(1), F.reduce(b)};
}

FpMatSet::FpMatSet(ContextPtr ctx, std::vector<FpMat> mats, std::optional<Residue> lambda)
    : ctx_(std::move(ctx)), lambda_(lambda) {
  if (!ctx_) throw std::invalid_argument("matrix set needs a field");
  const auto p = ctx_->p();
  if (p > kMaxPrime)
    throw std::invalid_argument(fmt::format("matrix sets need p < 65536, got {}", p));
  std::vector<std::uint64_t> keys;
  keys.reserve(mats.size());
  for (const auto& m : mats) {
    if (m.a >= p || m.b >= p || m.c >= p || m.d >= p)
      throw std::invalid_argument("matrix entry not reduced mod p");
    if (det(*ctx_, m) == 0) throw std::invalid_argument("singular matrix in matrix set");
    keys.push_back(encode(m, p));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  elems_.reserve(keys.size());
  for (auto k : keys) elems_.push_back(decode(k, p));
}

FpMatSet FpMatSet::inverses() const {
  std::vector<FpMat> out;
  out.reserve(elems_.size());
  for (const auto& m : elems_) out.push_back(mat_inverse(*ctx_, m));
  return FpMatSet(ctx_, std::move(out));
}

FpMatSet FpMatSet::left_translate(const FpMat& g) const {
  std::vector<FpMat> out;
  out.reserve(elems_.size());
  for (const auto& m : elems_) out.push_back(mat_mul(*ctx_, g, m));
  return FpMatSet(ctx_, std::move(out));
}

FpMatSet FpMatSet::right_translate(const FpMat& g) const {
  std::vector<FpMat> out;
  out.reserve(elems_.size());
  for (const auto& m : elems_) out.push_back(mat_mul(*ctx_, m, g));
  return FpMatSet(ctx_, std::move(out));
}

FpMatSet g_lambda_set(const FpSet& a, const FpSet& b, std::int64_t lambda) {
  require_same_field(a, b);
  const auto& F = a.field();
  const Residue l = F.reduce(lambda);
  if (l == 0) throw std::invalid_argument("G_lambda needs lambda != 0");
  std::vector<FpMat> mats;
  mats.reserve(a.size() * b.size());
  for (auto x : a)
    for (auto y : b) mats.push_back({F.neg(x), F.add(F.mul(x, y), l), F.neg(1), y});
  return FpMatSet(a.context(), std::move(mats), l);
}

FpMatSet g_diag_set(const FpSet& a, std::int64_t lambda) {
  const auto& F = a.field();
  const Residue l = F.reduce(lambda);
  if (l == 0) throw std::invalid_argument("G_lambda needs lambda != 0");
  std::vector<FpMat> mats;
  mats.reserve(a.size());
  for (auto x : a) mats.push_back({F.neg(x), F.add(F.mul(x, x), l), F.neg(1), x});
  return FpMatSet(a.context(), std::move(mats), l);
}

Residue ProjPoint::value() const {
  if (inf_) throw std::logic_error("point at infinity has no residue");
  return x_;
}

ProjPoint mobius_apply(const FieldContext& F, const FpMat& g, ProjPoint x) {
  if (x.is_infinity()) {
    if (g.c == 0) return ProjPoint::infinity();
    return ProjPoint::finite(F.div(g.a, g.c));
  }
  const Residue v = x.value();
  const Residue num = F.add(F.mul(g.a, v), g.b);
  const Residue den = F.add(F.mul(g.c, v), g.d);
  if (den == 0) return ProjPoint::infinity();
  return ProjPoint::finite(F.div(num, den));
}

// ---------------------------------------------------------------------------
// Word tables

namespace {

template <class W>
using Table = std::unordered_map<FpMat, W, FpMatHash>;

template <class W>
Table<W> multiply(const FieldContext& F, const Table<W>& x, const Table<W>& y,
                  const WordLimits& limits) {
  Table<W> out;
  out.reserve(std::min(x.size() * y.size(), limits.max_entries));
  for (const auto& [g, wg] : x) {
    for (const auto& [h, wh] : y) {
      out[mat_mul(F, g, h)] += wg * wh;
      if (out.size() > limits.max_entries)
        throw std::length_error(
            fmt::format("product table exceeds {} entries", limits.max_entries));
    }
  }
  return out;
}

template <class W>
Table<W> set_table(const FpMatSet& g, bool inverted) {
  Table<W> t;
  t.reserve(g.size());
  for (const auto& m : g.elements()) t[inverted ? mat_inverse(g.field(), m) : m] = W(1);
  return t;
}

void require_count_headroom(double log2_mass) {
  if (log2_mass >= 63.0)
    throw std::length_error("word multiplicities would overflow 64-bit counters");
}

double log2_size(std::size_t n) { return std::log2(std::max<double>(static_cast<double>(n), 1.0)); }

BigInt sum_squares(const MatCounts& c) {
  BigInt s = 0;
  for (const auto& [m, w] : c) s += BigInt(w) * w;
  return s;
}

}  // namespace

MatCounts ratio_counts(const FpMatSet& g) {
  return multiply(g.field(), set_table<std::uint64_t>(g, false),
                  set_table<std::uint64_t>(g, true), WordLimits{});
}

MatCounts left_ratio_counts(const FpMatSet& g) {
  return multiply(g.field(), set_table<std::uint64_t>(g, true),
                  set_table<std::uint64_t>(g, false), WordLimits{});
}

MatCounts ratio_power_counts(const FpMatSet& g, unsigned m, const WordLimits& limits) {
  require_count_headroom(2.0 * m * log2_size(g.size()));
  MatCounts out{{FpMat{}, 1}};
  if (m == 0) return out;
  const MatCounts r = ratio_counts(g);
  out = r;
  for (unsigned i = 1; i < m; ++i) out = multiply(g.field(), out, r, limits);
  return out;
}

MatCounts alternating_word_counts(const FpMatSet& g, unsigned k, const WordLimits& limits) {
  if (k == 0) return MatCounts{{FpMat{}, 1}};
  require_count_headroom(k * log2_size(g.size()));
  MatCounts out = ratio_power_counts(g, k / 2, limits);
  if (k % 2 == 1) out = multiply(g.field(), out, set_table<std::uint64_t>(g, false), limits);
  return out;
}

BigInt t_k_group(const FpMatSet& g, unsigned k, const WordLimits& limits) {
  if (k == 0) throw std::invalid_argument("T_k needs k >= 1");
  if (k == 1) return BigInt(g.size()) * g.size();
  return sum_squares(alternating_word_counts(g, k, limits));
}

BigInt t_k_sets(std::span<const FpMatSet> sets, const WordLimits& limits) {
  if (sets.empty() || sets.size() % 2 != 0)
    throw std::invalid_argument("T_k of sets needs 2k sets");
  const auto& ctx = sets.front().context();
  for (const auto& s : sets)
    if (s.field().p() != ctx->p()) throw std::invalid_argument("matrix sets over different fields");
  const std::size_t k = sets.size() / 2;

  auto word_table = [&](std::size_t from) {
    double mass = 0;
    for (std::size_t j = 0; j < k; ++j) mass += log2_size(sets[from + j].size());
    require_count_headroom(mass);
    auto t = set_table<std::uint64_t>(sets[from], false);
    for (std::size_t j = 1; j < k; ++j)
      t = multiply(*ctx, t, set_table<std::uint64_t>(sets[from + j], j % 2 == 1), limits);
    return t;
  };
  const auto left = word_table(0);
  const auto right = word_table(k);
  BigInt total = 0;
  for (const auto& [m, w] : left) {
    auto it = right.find(m);
    if (it != right.end()) total += BigInt(w) * it->second;
  }
  return total;
}

BigInt e_rk_group(const FpMatSet& g, unsigned k) {
  if (k == 0) throw std::invalid_argument("E^R_k needs k >= 1");
  BigInt s = 0;
  for (const auto& [m, w] : ratio_counts(g)) s += boost::multiprecision::pow(BigInt(w), k);
  return s;
}

BigInt e_lk_group(const FpMatSet& g, unsigned k) {
  if (k == 0) throw std::invalid_argument("E^L_k needs k >= 1");
  BigInt s = 0;
  for (const auto& [m, w] : left_ratio_counts(g)) s += boost::multiprecision::pow(BigInt(w), k);
  return s;
}

double t_k_function(const GroupFunction& f, unsigned k, const WordLimits& limits) {
  if (!f.ctx) throw std::invalid_argument("group function needs a field");
  if (k == 0) throw std::invalid_argument("T_k needs k >= 1");
  const auto& F = *f.ctx;
  using C = std::complex<double>;
  if (k == 1) {
    C total = 0;
    for (const auto& [m, v] : f.values) total += v;
    return std::norm(total);
  }
  Table<C> plain, inverted;
  for (const auto& [m, v] : f.values) {
    plain[m] += v;
    inverted[mat_inverse(F, m)] += v;
  }
  Table<C> word = plain;
  for (unsigned j = 1; j < k; ++j) word = multiply(F, word, j % 2 == 1 ? inverted : plain, limits);
  double s = 0;
  for (const auto& [m, w] : word) s += std::norm(w);
  return s;
}

double function_lp_norm(const GroupFunction& f, double q) {
  if (q < 1) throw std::invalid_argument("L^q norm needs q >= 1");
  double s = 0;
  for (const auto& [m, v] : f.values) s += std::pow(std::abs(v), q);
  return std::pow(s, 1.0 / q);
}

GroupFunction add_functions(const GroupFunction& f, const GroupFunction& g) {
  if (!f.ctx || !g.ctx || f.ctx->p() != g.ctx->p())
    throw std::invalid_argument("group functions over different fields");
  Table<std::complex<double>> sum;
  for (const auto& [m, v] : f.values) sum[m] += v;
  for (const auto& [m, v] : g.values) sum[m] += v;
  GroupFunction out{f.ctx, {}};
  out.values.assign(sum.begin(), sum.end());
  const auto p = f.ctx->p();
  std::sort(out.values.begin(), out.values.end(),
            [p](const auto& x, const auto& y) { return encode(x.first, p) < encode(y.first, p); });
  return out;
}

// ---------------------------------------------------------------------------
// Actions on P^1

namespace {

template <class W>
W action_sum_impl(const FpMatSet& g, std::span<const W> f1, std::span<const W> f2) {
  const auto p = g.field().p();
  if (f1.size() != p + 1 || f2.size() != p + 1)
    throw std::invalid_argument(fmt::format("weights on P^1 need length {}", p + 1));
  W total{};
  for (const auto& m : g.elements()) {
    for (std::uint32_t i = 0; i <= p; ++i) {
      if (f1[i] == W{}) continue;
      const auto y = mobius_apply(g.field(), m, ProjPoint::from_index(i, p));
      total += f1[i] * f2[y.index(p)];
    }
  }
  return total;
}

}  // namespace

std::int64_t action_sum(const FpMatSet& g, std::span<const std::int64_t> f1,
                        std::span<const std::int64_t> f2) {
  return action_sum_impl<std::int64_t>(g, f1, f2);
}

std::complex<double> action_sum(const FpMatSet& g, std::span<const std::complex<double>> f1,
                                std::span<const std::complex<double>> f2) {
  return action_sum_impl<std::complex<double>>(g, f1, f2);
}

std::vector<std::int64_t> projective_indicator(const FpSet& s) {
  std::vector<std::int64_t> f(s.p() + 1, 0);
  for (auto x : s) f[x] = 1;
  return f;
}

BoundReport counting_lemma_check(const FpMatSet& g, std::span<const std::int64_t> f1,
                                 std::span<const std::int64_t> f2, unsigned k) {
  if (k < 1 || k > 3) throw std::invalid_argument("counting lemma check supports 1 <= k <= 3");
  const auto& F = g.field();
  const auto p = F.p();
  const BigInt sigma = action_sum(g, f1, f2);
  const unsigned n = 1u << k;

  BigInt s1 = 0, s2 = 0;
  for (auto v : f1) s1 += BigInt(v) * v;
  for (auto v : f2) s2 += BigInt(v) * v;

  BigInt orbit_sum = 0;
  for (const auto& [m, r] : ratio_power_counts(g, n / 2)) {
    BigInt inner = 0;
    for (std::uint32_t i = 0; i <= p; ++i) {
      if (f2[i] == 0) continue;
      const auto y = mobius_apply(F, m, ProjPoint::from_index(i, p));
      inner += BigInt(f2[i]) * f2[y.index(p)];
    }
    orbit_sum += BigInt(r) * inner;
  }

  using boost::multiprecision::pow;
  const BigInt lhs = pow(abs(sigma), n);
  const BigInt rhs = pow(s1, n / 2) * pow(s2, n / 2 - 1) * orbit_sum;

  BoundReport rep;
  rep.name = fmt::format("counting-lemma-k{}", k);
  rep.exact_lhs = Rational(lhs);
  rep.lhs = static_cast<double>(lhs);
  rep.rhs_terms = {{"|f1|^n |f2|^{n-2} sum r f2 f2(g.)", static_cast<double>(rhs)}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : (lhs == 0 ? 0.0 : HUGE_VAL);
  rep.passed = lhs <= rhs;
  rep.notes.push_back(fmt::format("sigma = {}", sigma.str()));
  return rep;
}

}  // namespace hypenergy
