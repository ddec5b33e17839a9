#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "hypenergy/incidence.hpp"

namespace hypenergy {

using boost::multiprecision::pow;

RationalSet make_rational_set(std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

RationalSet integer_set(std::span<const std::int64_t> xs) {
  std::vector<Rational> v;
  v.reserve(xs.size());
  for (auto x : xs) v.emplace_back(x);
  return make_rational_set(std::move(v));
}

RationalSet scaled_interval(std::int64_t omega, std::int64_t n) {
  std::vector<Rational> v;
  for (std::int64_t i = 1; i <= n; ++i) v.emplace_back(BigInt(omega) * i);
  return make_rational_set(std::move(v));
}

BigInt count_hyperbola_rational(const RationalSet& a, const RationalSet& b, const RationalSet& c,
                                const RationalSet& d, const Rational& lambda) {
  if (lambda == 0) throw std::invalid_argument("hyperbola count needs lambda != 0");
  std::map<Rational, std::uint64_t> rcd;
  for (const auto& x : c)
    for (const auto& y : d) ++rcd[x + y];
  BigInt total = 0;
  for (const auto& x : a)
    for (const auto& y : b) {
      const Rational s = x + y;
      if (s == 0) continue;
      auto it = rcd.find(lambda / s);
      if (it != rcd.end()) total += it->second;
    }
  return total;
}

BigInt count_shared_hyperbola(const RationalSet& a, const RationalSet& b, const RationalSet& d) {
  BigInt total = 0;
  for (const auto& y : b)
    for (const auto& x : a) {
      const Rational s = x + y;
      if (s == 0) continue;
      if (std::binary_search(d.begin(), d.end(), Rational(1) / s - y)) ++total;
    }
  return total;
}

BigInt integer_additive_energy(std::span<const std::int64_t> b_in) {
  std::vector<std::int64_t> b(b_in.begin(), b_in.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::unordered_map<std::int64_t, std::uint64_t> r;
  for (auto x : b)
    for (auto y : b) ++r[x + y];
  BigInt s = 0;
  for (const auto& [v, w] : r) s += BigInt(w) * w;
  return s;
}

namespace {

std::size_t distinct_count(std::span<const std::int64_t> xs) {
  std::vector<std::int64_t> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

double log2_big(const BigInt& x) {
  // Exact enough for exponents: the mantissa of a double carries 53 bits.
  return std::log2(static_cast<double>(x));
}

}  // namespace

RhoResult rho_bound(std::span<const std::int64_t> b, std::span<const std::int64_t> c) {
  const auto nb = distinct_count(b), nc = distinct_count(c);
  if (nb == 0 || nc == 0) throw std::invalid_argument("rho needs nonempty sets");
  const double leb = log2_big(integer_additive_energy(b));
  const double lec = log2_big(integer_additive_energy(c));
  const double lb = std::log2(static_cast<double>(nb));
  const double lc = std::log2(static_cast<double>(nc));
  RhoResult out;
  double best = -HUGE_VAL;
  for (unsigned k = 2; k <= out.k_max; ++k) {
    const double e = ((k - 1) * lec + (k - 2.0) * leb - (4.0 * k - 6) * lb - (4.0 * k - 4) * lc) /
                     (8.0 * k - 6);
    if (e > best) {
      best = e;
      out.k_star = k;
    }
  }
  out.rho = std::exp2(best);
  const double k = out.k_star;
  out.comparison = std::exp2(-(k * lb + (k - 1) * lc) / (8 * k - 6));
  return out;
}

double integer_envelope(std::size_t n) {
  const double l = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  return 1024.0 * l * l * l;
}

BoundReport bound_asym_Z(const RationalSet& a, std::span<const std::int64_t> b,
                         std::span<const std::int64_t> c, const RationalSet& d,
                         const Rational& lambda) {
  const auto bs = integer_set(b), cs = integer_set(c);
  if (a.empty() || bs.empty() || cs.empty() || d.empty())
    throw std::invalid_argument("asymmetric bound needs nonempty sets");
  BoundReport rep;
  rep.name = "asym-Z";
  const BigInt count = count_hyperbola_rational(a, bs, cs, d, lambda);
  rep.exact_lhs = Rational(count);
  rep.lhs = static_cast<double>(count);

  const double na = a.size(), nb = bs.size(), nc = cs.size(), nd = d.size();
  const auto rho = rho_bound(b, c);
  rep.rhs_terms = {{"sqrt(|A||D|)|B||C|max(|D|^{-1/2},rho)",
                    std::sqrt(na * nd) * nb * nc * std::max(1 / std::sqrt(nd), rho.rho)},
                   {"rho", rho.rho}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.envelope = integer_envelope(std::max({a.size(), bs.size(), cs.size(), d.size()}));
  rep.evaluate();
  rep.notes.push_back(fmt::format("rho maximized at k = {} over [2, {}]", rho.k_star, rho.k_max));

  // Refined side for the smallest l with |D|^4 E(C)^l E(B)^{l-1} >= |B|^{4l-2}|C|^{4l}.
  const BigInt eb = integer_additive_energy(b), ec = integer_additive_energy(c);
  const BigInt bd = d.size(), bb = bs.size(), bc = cs.size();
  for (unsigned l = 1; l <= 20; ++l) {
    if (pow(bd, 4) * pow(ec, l) * pow(eb, l - 1) < pow(bb, 4 * l - 2) * pow(bc, 4 * l)) continue;
    const double refined =
        std::cbrt(nb * nc) * std::sqrt(na * nd) * std::pow(nd, 1.0 / (6 * l)) *
        std::exp2((2 * std::log2(nb) + l * log2_big(ec) + (l - 1.0) * log2_big(eb)) / (6.0 * l));
    rep.rhs_terms.push_back({fmt::format("refined-l{}", l), refined});
    rep.notes.push_back(fmt::format("refined premise first met at l = {}", l));
    break;
  }
  return rep;
}

BoundReport bound_prop_Re(const RationalSet& a, const RationalSet& d, std::int64_t omega,
                          std::int64_t n) {
  if (omega > -2 && omega < 2) throw std::invalid_argument("needs |omega| >= 2");
  if (n < 1) throw std::invalid_argument("needs N >= 1");
  if (a.empty() || d.empty()) throw std::invalid_argument("needs nonempty A and D");
  const auto b = scaled_interval(omega, n);
  BoundReport rep;
  rep.name = "prop-Re";
  const BigInt count = count_shared_hyperbola(a, b, d);
  rep.exact_lhs = Rational(count);
  rep.lhs = static_cast<double>(count);
  const double na = a.size(), nd = d.size(), nn = static_cast<double>(n);
  rep.rhs_terms = {{"sqrt(|A||D|)N max(|D|^{-1/2},N^{-1/5})",
                    std::sqrt(na * nd) * nn * std::max(1 / std::sqrt(nd), std::pow(nn, -0.2))}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.envelope = integer_envelope(std::max({a.size(), d.size(), static_cast<std::size_t>(n)}));
  rep.evaluate();

  for (unsigned l = 1; l <= 64; ++l) {
    if (pow(BigInt(d.size()), 2) < pow(BigInt(n), l)) continue;
    rep.rhs_terms.push_back({fmt::format("refined-l{}", l), std::sqrt(na * nd) *
                                                               std::pow(nn, 2.0 / 3) *
                                                               std::pow(nd, 1.0 / (6 * l))});
    rep.notes.push_back(fmt::format("|D|^2 >= N^l first at l = {}", l));
    break;
  }
  return rep;
}

RationalSet inverse_shift_example(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 0) throw std::invalid_argument("example needs M >= 1 and N >= 0");
  std::vector<Rational> v;
  for (std::int64_t q = 2; q <= 2 * m + 1; ++q) {
    v.emplace_back(q);
    for (std::int64_t j = 1; j <= n; ++j) v.push_back(Rational(BigInt(1), BigInt(q)) + j);
  }
  return make_rational_set(std::move(v));
}

}  // namespace hypenergy
