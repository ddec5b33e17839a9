#include "hypenergy/incidence.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "hypenergy/energies.hpp"

namespace hypenergy {

namespace {

__extension__ using U128 = unsigned __int128;

void require_four_same_field(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d) {
  require_same_field(a, b);
  require_same_field(a, c);
  require_same_field(a, d);
}

BigInt from_u128(U128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

struct Sizes {
  double a, b, c, d;
};

Sizes sizes(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d) {
  return {static_cast<double>(a.size()), static_cast<double>(b.size()),
          static_cast<double>(c.size()), static_cast<double>(d.size())};
}

BoundReport hyperbola_report(std::string name, const FpSet& a, const FpSet& b, const FpSet& c,
                             const FpSet& d, std::int64_t lambda) {
  BoundReport rep;
  rep.name = std::move(name);
  const BigInt count = count_hyperbola(a, b, c, d, lambda);
  rep.exact_lhs = Rational(count);
  rep.lhs = static_cast<double>(count);
  rep.main_term = Rational(BigInt(a.size()) * b.size() * c.size() * d.size(), BigInt(a.p()));
  rep.envelope = log_envelope(a.p());
  return rep;
}

}  // namespace

BigInt count_hyperbola(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                       std::int64_t lambda) {
  require_four_same_field(a, b, c, d);
  const auto& F = a.field();
  const Residue l = F.reduce(lambda);
  if (l == 0) throw std::invalid_argument("hyperbola count needs lambda != 0");
  const auto r1 = rep_additive(a, b, Sign::Plus);
  const auto r2 = rep_additive(c, d, Sign::Plus);
  const auto inv = F.inv_table();
  U128 total = 0;
  for (Residue s = 1; s < F.p(); ++s) {
    if (r1[s] == 0) continue;
    total += static_cast<U128>(r1[s]) * r2[F.mul(l, inv[s])];
  }
  return from_u128(total);
}

Rational hyperbola_deviation(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                             std::int64_t lambda) {
  const BigInt count = count_hyperbola(a, b, c, d, lambda);
  return Rational(count) -
         Rational(BigInt(a.size()) * b.size() * c.size() * d.size(), BigInt(a.p()));
}

BoundReport bound_thm1(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                       std::int64_t lambda) {
  auto rep = hyperbola_report("thm1", a, b, c, d, lambda);
  const auto n = sizes(a, b, c, d);
  rep.rhs_terms = {
      {"|A|^{1/4}|B||C||D|^{1/2}", std::pow(n.a, 0.25) * n.b * n.c * std::sqrt(n.d)},
      {"|A|^{3/4}(|B||C|)^{41/48}|D|^{1/2}",
       std::pow(n.a, 0.75) * std::pow(n.b * n.c, 41.0 / 48) * std::sqrt(n.d)}};
  rep.rhs = rep.rhs_terms[0].value + rep.rhs_terms[1].value;
  rep.evaluate();
  return rep;
}

BoundReport bound_thm_hyp_full(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                               std::int64_t lambda) {
  auto rep = hyperbola_report("thm-hyp-full", a, b, c, d, lambda);
  const auto n = sizes(a, b, c, d);
  const double eb = static_cast<double>(additive_energy(b, b));
  const double ec = static_cast<double>(additive_energy(c, c));
  const double ebc = static_cast<double>(additive_energy(b, c));
  const double branch1 =
      std::sqrt(n.d) * n.b * n.c +
      n.a * std::sqrt(n.d) * std::cbrt(n.b * n.c) *
          (std::cbrt(n.b) * std::pow(ec, 1.0 / 6) + std::cbrt(n.c) * std::pow(eb, 1.0 / 6));
  const double branch2 = std::pow(n.a, 0.25) * n.b * n.c * std::sqrt(n.d) +
                         std::pow(n.a, 0.75) * std::pow(n.b * n.c, 19.0 / 24) * std::sqrt(n.d) *
                             std::pow(ebc, 1.0 / 24);
  rep.rhs_terms = {{"energy-branch", branch1}, {"mixed-energy-branch", branch2}};
  rep.rhs = std::min(branch1, branch2);
  rep.notes.push_back(branch1 <= branch2 ? "min attained by the energy branch"
                                         : "min attained by the mixed-energy branch");
  rep.evaluate();
  return rep;
}

BoundReport bound_progression(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                              std::int64_t lambda) {
  if (!is_unit_step_progression(b) || !is_unit_step_progression(c))
    throw std::invalid_argument("progression bound needs B and C to be step-one progressions");
  auto rep = hyperbola_report("progression", a, b, c, d, lambda);
  const auto n = sizes(a, b, c, d);
  const double bc = n.b * n.c;
  rep.rhs_terms = {
      {"|A|^{1/4}|B||C||D|^{1/2}", std::pow(n.a, 0.25) * bc * std::sqrt(n.d)},
      {"|A|^{3/4}|D|^{1/2}(|B||C|)^{5/6}(1+(|B||C|/p)^{1/12})",
       std::pow(n.a, 0.75) * std::sqrt(n.d) * std::pow(bc, 5.0 / 6) *
           (1 + std::pow(bc / a.p(), 1.0 / 12))}};
  rep.rhs = rep.rhs_terms[0].value + rep.rhs_terms[1].value;
  rep.evaluate();
  return rep;
}

RAAPremises raa_premises(const FpSet& a) {
  RAAPremises out;
  const FpSet diff = difference_set(a, a);
  const FpSet dd = difference_set(sumset(a, a), sumset(a, a));
  out.diff_size = diff.size();
  out.double_diff_size = dd.size();
  using boost::multiprecision::pow;
  const BigInt p = a.p();
  out.statement_premise = pow(BigInt(diff.size()), 92) <= pow(p, 52);
  out.proof_premise = pow(BigInt(diff.size()), 117) <= pow(p, 52) * pow(BigInt(dd.size()), 25);
  return out;
}

namespace {

BoundReport raa_report(std::string name, const FpSet& a, std::int64_t lambda) {
  if (a.empty()) throw std::invalid_argument("r_AA bound needs a nonempty set");
  const auto& F = a.field();
  const Residue l = F.reduce(lambda);
  if (l == 0) throw std::invalid_argument("r_AA bound needs lambda != 0");
  BoundReport rep;
  rep.name = std::move(name);
  const auto r = rep_multiplicative(a, a)[l];
  rep.exact_lhs = Rational(BigInt(r));
  rep.lhs = static_cast<double>(r);
  rep.envelope = log_envelope(a.p());
  const auto prem = raa_premises(a);
  rep.notes.push_back(fmt::format("K = {}/{}", sumset(a, a).size(), a.size()));
  rep.notes.push_back(
      fmt::format("premise |A-A|^92 <= p^52: {} (|A-A| = {})", prem.statement_premise,
                  prem.diff_size));
  rep.notes.push_back(fmt::format("premise |A-A|^117 <= p^52 |2A-2A|^25: {} (|2A-2A| = {})",
                                  prem.proof_premise, prem.double_diff_size));
  return rep;
}

}  // namespace

BoundReport bound_rAA(const FpSet& a, std::int64_t lambda) {
  auto rep = raa_report("rAA", a, lambda);
  const double n = a.size();
  const double k = sumset(a, a).size() / n;
  rep.rhs_terms = {{"K^2|A|^2/p", k * k * n * n / a.p()},
                   {"K^{5/4}|A|^{23/24}", std::pow(k, 1.25) * std::pow(n, 23.0 / 24)}};
  rep.rhs = rep.rhs_terms[0].value + rep.rhs_terms[1].value;
  rep.evaluate();
  return rep;
}

BoundReport bound_rAA_refined(const FpSet& a, std::int64_t lambda) {
  auto rep = raa_report("rAA-refined", a, lambda);
  const double n = a.size();
  const double k = sumset(a, a).size() / n;
  rep.rhs_terms = {{"K^2|A|^2/p", k * k * n * n / a.p()},
                   {"|A|^{149/156}", std::pow(n, 149.0 / 156)}};
  rep.rhs = rep.rhs_terms[0].value + rep.rhs_terms[1].value;
  rep.evaluate();
  rep.asserted = false;
  rep.notes.push_back("constant depends on K; reported only");
  return rep;
}

ShiftInverseProfile shift_inverse_profile(const FpSet& a, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("shift profile needs N >= 1");
  const auto& F = a.field();
  if (2 * n >= static_cast<std::int64_t>(F.p()))
    throw std::invalid_argument("shift profile needs 2N < p");
  const auto inv = F.inv_table();
  ShiftInverseProfile out;
  for (std::int64_t i = 2; i <= 2 * n; i += 2) {
    const FpSet s = translate(a, i);
    std::uint64_t count = 0;
    for (auto x : s)
      if (x != 0 && s.contains(inv[x])) ++count;
    out.rows.emplace_back(i, count);
    if (out.rows.size() == 1 || count < out.min_value) {
      out.min_value = count;
      out.argmin = i;
    }
  }
  return out;
}

}  // namespace hypenergy
