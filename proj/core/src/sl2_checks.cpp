#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

#include "hypenergy/energies.hpp"
#include "hypenergy/sl2.hpp"

namespace hypenergy {

using boost::multiprecision::pow;

// ---------------------------------------------------------------------------
// Transitive actions

namespace {

std::vector<ProjPoint> dedup_points(std::span<const ProjPoint> pts, std::uint32_t p) {
  std::vector<bool> seen(p + 1, false);
  std::vector<ProjPoint> out;
  for (const auto& x : pts) {
    if (!x.is_infinity() && x.value() >= p)
      throw std::invalid_argument("point not reduced mod p");
    if (!seen[x.index(p)]) {
      seen[x.index(p)] = true;
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

BoundReport transitivity_bound_check(const ContextPtr& ctx, const TransitiveFamily& family,
                                     std::span<const ProjPoint> a_pts,
                                     std::span<const ProjPoint> b_pts, unsigned k) {
  if (!ctx) throw std::invalid_argument("transitivity check needs a field");
  const auto& F = *ctx;
  const auto p = F.p();
  const auto a = dedup_points(a_pts, p);
  const auto b = dedup_points(b_pts, p);
  std::vector<bool> in_a(p + 1, false);
  for (const auto& x : a) in_a[x.index(p)] = true;

  std::uint64_t lhs = 0;
  std::uint64_t group_size = 0;
  std::string kind;

  if (const auto* maps = std::get_if<std::vector<AffineMap>>(&family)) {
    if (k != 2) throw std::invalid_argument("the affine action is sharply 2-transitive; use k = 2");
    std::set<std::pair<Residue, Residue>> uniq;
    for (const auto& m : *maps) {
      if (m.scale % p == 0) throw std::invalid_argument("affine map with zero scale");
      uniq.insert({m.scale % p, m.shift % p});
    }
    for (const auto& x : b)
      if (x.is_infinity()) throw std::invalid_argument("the affine action lives on F_p");
    for (const auto& [s, t] : uniq)
      for (const auto& x : b) lhs += in_a[F.add(F.mul(s, x.value()), t)];
    group_size = uniq.size();
    kind = "affine";
  } else {
    const auto& mats = std::get<FpMatSet>(family);
    if (k != 3) throw std::invalid_argument("the Moebius action is sharply 3-transitive; use k = 3");
    if (mats.field().p() != p) throw std::invalid_argument("matrix set over a different field");
    std::unordered_set<FpMat, FpMatHash> proj;
    for (const auto& m : mats.elements()) proj.insert(projective_normal_form(F, m));
    for (const auto& m : proj)
      for (const auto& x : b) lhs += in_a[mobius_apply(F, m, x).index(p)];
    group_size = proj.size();
    kind = "moebius";
  }

  const double g = static_cast<double>(group_size);
  const double ab = static_cast<double>(a.size()) * static_cast<double>(b.size());

  BoundReport rep;
  rep.name = fmt::format("transitivity-{}-k{}", kind, k);
  rep.exact_lhs = Rational(BigInt(lhs));
  rep.lhs = static_cast<double>(lhs);
  rep.rhs_terms = {{"|G|^{1-1/k}|A||B|", std::pow(g, 1.0 - 1.0 / k) * ab}, {"|G|", g}};
  rep.rhs = rep.rhs_terms[0].value + rep.rhs_terms[1].value;
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0;
  // (lhs - |G|)^k <= |G|^{k-1} (|A||B|)^k, in integers.
  if (lhs <= group_size) {
    rep.passed = true;
  } else {
    const BigInt excess = BigInt(lhs) - group_size;
    rep.passed = pow(excess, k) <= pow(BigInt(group_size), k - 1) *
                                       pow(BigInt(a.size()) * b.size(), k);
  }
  rep.notes.push_back(fmt::format("|G| after deduplication = {}", group_size));
  return rep;
}

// ---------------------------------------------------------------------------
// Trace formula

IdentityReport trace_formula_check(const FpMatSet& g, unsigned k, std::size_t max_group_order) {
  if (k < 2) throw std::invalid_argument("trace formula check needs k >= 2");
  const auto& F = g.field();
  const std::uint64_t p = F.p();
  const std::uint64_t order = p * (p * p - 1);
  if (order > max_group_order)
    throw std::length_error(
        fmt::format("|SL_2(F_{})| = {} exceeds the limit {}", p, order, max_group_order));
  for (const auto& m : g.elements())
    if (det(F, m) != 1) throw std::invalid_argument("trace formula needs G inside SL_2");

  const double bits = 2.0 * k * std::log2(std::max<double>(g.size(), 1.0)) +
                      std::log2(static_cast<double>(order));
  if (bits >= 126) throw std::length_error("operator powers would overflow 128-bit entries");

  std::vector<FpMat> group;
  std::unordered_map<FpMat, std::size_t, FpMatHash> index;
  const auto q = static_cast<Residue>(p);
  for (Residue a = 0; a < q; ++a)
    for (Residue b = 0; b < q; ++b)
      for (Residue c = 0; c < q; ++c)
        for (Residue d = 0; d < q; ++d) {
          const FpMat m{a, b, c, d};
          if (det(F, m) == 1) {
            index.emplace(m, group.size());
            group.push_back(m);
          }
        }
  const std::size_t n = group.size();

  __extension__ using U = unsigned __int128;
  const MatCounts r = ratio_counts(g);
  std::vector<U> t(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = r.find(mat_mul(F, group[i], mat_inverse(F, group[j])));
      if (it != r.end()) t[i * n + j] = it->second;
    }
  }

  std::vector<U> power = t, next(n * n);
  for (unsigned step = 1; step < k; ++step) {
    std::fill(next.begin(), next.end(), U{0});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const U x = power[i * n + l];
        if (x == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += x * t[l * n + j];
      }
    power.swap(next);
  }
  U trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += power[i * n + i];

  BigInt big_trace = static_cast<std::uint64_t>(trace >> 64);
  big_trace <<= 64;
  big_trace += static_cast<std::uint64_t>(trace);

  IdentityReport rep;
  rep.name = fmt::format("trace-formula-k{}", k);
  rep.lhs = t_k_group(g, k);
  rep.rhs = big_trace / order;
  rep.holds = big_trace % order == 0 && rep.lhs == rep.rhs;
  rep.detail = fmt::format("p={} |Gr|={} |G|={} trace={}", p, order, g.size(), big_trace.str());
  return rep;
}

// ---------------------------------------------------------------------------
// Identities for G_lambda(A, B)

IdentityReport t2_identity_check(const FpSet& a, const FpSet& b, std::int64_t lambda) {
  const auto g = g_lambda_set(a, b, lambda);
  const BigInt na = a.size(), nb = b.size();
  IdentityReport rep;
  rep.name = "T2-identity";
  rep.lhs = t_k_group(g, 2);
  rep.rhs = na * na * (additive_energy(b, b) - nb * nb) + nb * nb * additive_energy(a, a);
  rep.holds = rep.lhs == rep.rhs;
  rep.detail = fmt::format("p={} A={} B={} lambda={}", a.p(), a.to_string(), b.to_string(), lambda);
  return rep;
}

IdentityReport erk_identity_check(const FpSet& a, const FpSet& b, std::int64_t lambda,
                                  unsigned k) {
  const auto g = g_lambda_set(a, b, lambda);
  const BigInt na = a.size(), nbk = pow(BigInt(b.size()), k);
  IdentityReport rep;
  rep.name = fmt::format("ER{}-identity", k);
  rep.lhs = e_rk_group(g, k);
  rep.rhs = na * na * (e_plus_k(b, k) - nbk) + nbk * e_plus_k(a, k);
  rep.holds = rep.lhs == rep.rhs;
  rep.detail = fmt::format("p={} A={} B={} lambda={}", a.p(), a.to_string(), b.to_string(), lambda);
  return rep;
}

IdentityReport elk_inequality_check(const FpSet& a, const FpSet& b, std::int64_t lambda,
                                    unsigned k) {
  const auto g = g_lambda_set(a, b, lambda);
  const BigInt nb = b.size();
  IdentityReport rep;
  rep.name = fmt::format("EL{}-inequality", k);
  rep.lhs = e_lk_group(g, k);
  rep.rhs = nb * nb * e_plus_k(a, k) + pow(BigInt(a.size()), k) * e_plus_k(b, k);
  rep.holds = rep.lhs <= rep.rhs;
  rep.detail = fmt::format("p={} A={} B={} lambda={}", a.p(), a.to_string(), b.to_string(), lambda);
  return rep;
}

IdentityReport t3_inequality_check(const FpSet& a, const FpSet& b, std::int64_t lambda) {
  const auto g = g_lambda_set(a, b, lambda);
  const BigInt nab = BigInt(a.size()) * b.size();
  IdentityReport rep;
  rep.name = "T3-inequality";
  rep.lhs = t_k_group(g, 3);
  rep.rhs = nab * d2_quantity(a, b) + pow(nab, 4);
  rep.holds = rep.lhs <= rep.rhs;
  rep.detail = fmt::format("p={} A={} B={} lambda={}", a.p(), a.to_string(), b.to_string(), lambda);
  return rep;
}

// ---------------------------------------------------------------------------
// Integer mode

ZMat zmat_mul(const ZMat& x, const ZMat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

BigInt det(const ZMat& m) { return m.a * m.d - m.b * m.c; }

bool is_identity(const ZMat& m) { return m.a == 1 && m.b == 0 && m.c == 0 && m.d == 1; }

namespace {

std::vector<std::int64_t> sorted_unique(std::span<const std::int64_t> xs) {
  std::vector<std::int64_t> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct ZHash {
  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
  static std::uint64_t fold(std::int64_t v) { return static_cast<std::uint64_t>(v); }
  static std::uint64_t fold(const BigInt& v) {
    return static_cast<std::uint64_t>(static_cast<long long>(v % 2305843009213693951ll));
  }
  template <class T>
  std::size_t operator()(const Mat2Z<T>& m) const {
    std::uint64_t h = 0;
    h = mix(h, fold(m.a));
    h = mix(h, fold(m.b));
    h = mix(h, fold(m.c));
    h = mix(h, fold(m.d));
    return static_cast<std::size_t>(h);
  }
};

template <class T>
Mat2Z<T> mul(const Mat2Z<T>& x, const Mat2Z<T>& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

template <class T>
using ZTable = std::unordered_map<Mat2Z<T>, std::uint64_t, ZHash>;

template <class T>
ZTable<T> zmultiply(const ZTable<T>& x, const ZTable<T>& y, const WordLimits& limits) {
  ZTable<T> out;
  out.reserve(std::min(x.size() * y.size(), limits.max_entries));
  for (const auto& [g, wg] : x)
    for (const auto& [h, wh] : y) {
      out[mul(g, h)] += wg * wh;
      if (out.size() > limits.max_entries)
        throw std::length_error(
            fmt::format("product table exceeds {} entries", limits.max_entries));
    }
  return out;
}

// T_{2k} = sum_x r_{(G adj(G))^k}(x)^2. Adjugates keep everything integral and
// differ from inverses by the common scalar det = lambda, which cancels.
template <class T>
BigInt t_2k_counts(const std::vector<ZMat>& g, unsigned k, const WordLimits& limits) {
  auto conv = [](const BigInt& v) {
    if constexpr (std::is_same_v<T, BigInt>) return v;
    else return static_cast<T>(static_cast<long long>(v));
  };
  ZTable<T> plain, adj;
  for (const auto& m : g) {
    plain[{conv(m.a), conv(m.b), conv(m.c), conv(m.d)}] += 1;
    adj[{conv(m.d), conv(-m.b), conv(-m.c), conv(m.a)}] += 1;
  }
  const auto ratio = zmultiply(plain, adj, limits);
  auto word = ratio;
  for (unsigned i = 1; i < k; ++i) word = zmultiply(word, ratio, limits);
  BigInt s = 0;
  for (const auto& [m, w] : word) s += BigInt(w) * w;
  return s;
}

}  // namespace

std::vector<ZMat> g_lambda_integer(std::span<const std::int64_t> b, std::span<const std::int64_t> c,
                                   std::int64_t lambda) {
  if (lambda == 0) throw std::invalid_argument("G_lambda needs lambda != 0");
  std::vector<ZMat> out;
  for (auto x : sorted_unique(b))
    for (auto y : sorted_unique(c))
      out.push_back({BigInt(-x), BigInt(x) * y + lambda, BigInt(-1), BigInt(y)});
  return out;
}

FreeGroupReport free_group_check(std::int64_t s, std::int64_t t, unsigned max_length,
                                 unsigned exponent_cap) {
  if (BigInt(s) * t < 4 && BigInt(s) * t > -4)
    throw std::invalid_argument("free generation needs |st| >= 4");
  if (exponent_cap == 0) throw std::invalid_argument("exponent cap must be positive");

  FreeGroupReport rep;
  rep.s = s;
  rep.t = t;
  rep.max_length = max_length;
  rep.exponent_cap = exponent_cap;

  const int cap = static_cast<int>(exponent_cap);
  auto letter = [&](FreeGenerator gen, int e) {
    if (gen == FreeGenerator::Upper) return ZMat{1, BigInt(s) * e, 0, 1};
    return ZMat{1, 0, BigInt(t) * e, 1};
  };

  std::vector<std::pair<FreeGenerator, int>> word;
  auto dfs = [&](auto&& self, const ZMat& prefix, FreeGenerator next) -> void {
    if (rep.relation_found || word.size() >= max_length) return;
    const FreeGenerator after =
        next == FreeGenerator::Upper ? FreeGenerator::Lower : FreeGenerator::Upper;
    for (int e = -cap; e <= cap; ++e) {
      if (e == 0) continue;
      const ZMat m = zmat_mul(prefix, letter(next, e));
      word.emplace_back(next, e);
      ++rep.words_checked;
      if (is_identity(m)) {
        rep.relation_found = true;
        rep.relation = word;
        return;
      }
      self(self, m, after);
      word.pop_back();
      if (rep.relation_found) return;
    }
  };
  dfs(dfs, ZMat{}, FreeGenerator::Upper);
  dfs(dfs, ZMat{}, FreeGenerator::Lower);
  return rep;
}

IntegerEnergyResult t_2k_integer_mode(std::span<const std::int64_t> b_in,
                                      std::span<const std::int64_t> c_in, std::int64_t lambda,
                                      unsigned k, const WordLimits& limits) {
  if (lambda == 0) throw std::invalid_argument("integer mode needs lambda != 0");
  if (k < 1 || k > 2) throw std::invalid_argument("integer mode supports k in {1, 2}");
  const auto b = sorted_unique(b_in);
  const auto c = sorted_unique(c_in);
  if (b.empty() || c.empty()) throw std::invalid_argument("integer mode needs nonempty sets");
  if (b.size() > 12 || c.size() > 12)
    throw std::invalid_argument("integer mode supports at most 12 elements per set");

  const auto g = g_lambda_integer(b, c, lambda);
  BigInt max_entry = 1;
  for (const auto& m : g)
    for (const BigInt* e : {&m.a, &m.b, &m.c, &m.d}) max_entry = std::max(max_entry, BigInt(abs(*e)));
  // Products of 2k factors have entries at most 2^{2k-1} M^{2k}.
  const double bits = (2.0 * k - 1) + 2.0 * k * std::log2(static_cast<double>(max_entry));

  IntegerEnergyResult out;
  out.value = bits < 62 ? t_2k_counts<std::int64_t>(g, k, limits) : t_2k_counts<BigInt>(g, k, limits);

  const BigInt lam_plus = std::max<BigInt>(BigInt(lambda < 0 ? -lambda : lambda), 1);
  const BigInt bound =
      pow(8 * lam_plus, 4 * k) * pow(BigInt(c.size()), 3 * k) * pow(BigInt(b.size()), 3 * k - 1);

  auto& rep = out.report;
  rep.name = fmt::format("T{}-integer", 2 * k);
  rep.exact_lhs = Rational(out.value);
  rep.lhs = static_cast<double>(out.value);
  rep.rhs_terms = {{"(8 lambda+)^{4k}|C|^{3k}|B|^{3k-1}", static_cast<double>(bound)}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.ratio = rep.lhs / rep.rhs;
  rep.passed = out.value <= bound;
  rep.notes.push_back(bits < 62 ? "int64 products" : "arbitrary-precision products");
  return out;
}

}  // namespace hypenergy
