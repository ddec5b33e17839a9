#include "hypenergy/energies.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "hypenergy/spectral.hpp"

namespace hypenergy {

const char* to_string(EnergyMethod m) {
  switch (m) {
    case EnergyMethod::Brute: return "brute";
    case EnergyMethod::Table: return "table";
    case EnergyMethod::Spectral: return "spectral";
  }
  return "?";
}

namespace {

BigInt round_to_integer(double x) {
  if (!std::isfinite(x) || x < -0.5)
    throw std::runtime_error(fmt::format("spectral energy produced {}", x));
  return BigInt(static_cast<unsigned long long>(std::llround(x)));
}

// r_{kA} by iterated convolution with the indicator of A.
template <class Count>
BigInt t_plus_k_iterated(const FpSet& a, unsigned k) {
  const auto& F = a.field();
  std::vector<Count> r(F.p(), Count(0));
  for (auto x : a) r[x] = 1;
  for (unsigned step = 1; step < k; ++step) {
    std::vector<Count> next(F.p(), Count(0));
    for (Residue x = 0; x < F.p(); ++x) {
      if (r[x] == 0) continue;
      for (auto y : a) next[F.add(x, y)] += r[x];
    }
    r = std::move(next);
  }
  BigInt total = 0;
  for (const auto& v : r)
    if (v != 0) total += BigInt(v) * BigInt(v);
  return total;
}

}  // namespace

BigInt additive_energy(const FpSet& a, const FpSet& b) {
  return sum_of_squares(rep_additive(a, b, Sign::Plus).values);
}

BigInt additive_energy_via_differences(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  const auto ra = rep_additive(a, a, Sign::Minus);
  const auto rb = rep_additive(b, b, Sign::Minus);
  BigInt s = 0;
  for (Residue x = 0; x < a.p(); ++x)
    if (ra[x] && rb[x]) s += BigInt(ra[x]) * rb[x];
  return s;
}

BigInt additive_energy_spectral(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  const auto fa = dft(WeightFn::indicator(a));
  const auto fb = dft(WeightFn::indicator(b));
  double s = 0;
  for (Residue xi = 0; xi < a.p(); ++xi) s += std::norm(fa[xi]) * std::norm(fb[xi]);
  return round_to_integer(s / a.p());
}

BigInt multiplicative_energy(const FpSet& a, const FpSet& b) {
  return sum_of_squares(rep_multiplicative(a, b).values);
}

BigInt t_plus_k(const FpSet& a, unsigned k) {
  if (k < 1) throw std::invalid_argument("T_k^+ needs k >= 1");
  if (k == 1) return BigInt(a.size()) * a.size();
  // r_{kA}(x) <= |A|^{k-1}; keep 64-bit counts while that is safe.
  const double bits = (k - 1) * std::log2(std::max<double>(a.size(), 1.0));
  if (bits < 62.0) return t_plus_k_iterated<std::uint64_t>(a, k);
  return t_plus_k_iterated<BigInt>(a, k);
}

BigInt t_plus_k_spectral(const FpSet& a, unsigned k) {
  if (k < 1) throw std::invalid_argument("T_k^+ needs k >= 1");
  if (k == 1) return BigInt(a.size()) * a.size();
  const auto fa = dft(WeightFn::indicator(a));
  double s = 0;
  for (auto c : fa.coeffs()) s += std::pow(std::norm(c), static_cast<double>(k));
  return round_to_integer(s / a.p());
}

BigInt e_plus_k(const FpSet& a, unsigned k) {
  if (k < 1) throw std::invalid_argument("E_k^+ needs k >= 1");
  return sum_of_powers(rep_additive(a, a, Sign::Minus).values, k);
}

BigInt d2_quantity(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  const auto ra = rep_additive(a, a, Sign::Minus);
  const auto rb = rep_additive(b, b, Sign::Minus);
  return sum_of_squares(multiplicative_convolution(a.field(), ra.values, rb.values));
}

EnergyReport measure_additive_energy(const FpSet& a, const FpSet& b, EnergyMethod method) {
  EnergyReport rep;
  rep.name = "E+";
  rep.method = method;
  rep.inputs = fmt::format("p={} |A|={} |B|={}", a.p(), a.size(), b.size());
  switch (method) {
    case EnergyMethod::Table: rep.value = additive_energy(a, b); break;
    case EnergyMethod::Spectral: rep.value = additive_energy_spectral(a, b); break;
    case EnergyMethod::Brute:
      throw std::invalid_argument("brute-force energies live in the test oracles");
  }
  return rep;
}

BoundReport check_progression_energy(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  if (!is_unit_step_progression(a) || !is_unit_step_progression(b))
    throw std::invalid_argument("progression energy check needs step-one progressions");
  const double na = a.size(), nb = b.size();
  const double lg = log2p(a.p());

  BoundReport rep;
  rep.name = "progression-energy";
  const BigInt ex = multiplicative_energy(a, b);
  rep.exact_lhs = Rational(ex);
  rep.lhs = static_cast<double>(ex);
  rep.main_term = Rational(BigInt(a.size() * a.size()) * (b.size() * b.size()), BigInt(a.p()));
  rep.rhs_terms = {{"|A||B|log^2p", na * nb * lg * lg}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.envelope = 64;
  rep.evaluate_absolute();
  return rep;
}

BoundReport check_d2_bound(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  const double na = a.size(), nb = b.size();
  BoundReport rep;
  rep.name = "d2";
  const BigInt d2 = d2_quantity(a, b);
  rep.exact_lhs = Rational(d2);
  rep.lhs = static_cast<double>(d2);
  const BigInt n4 = boost::multiprecision::pow(BigInt(a.size()) * b.size(), 4);
  rep.main_term = Rational(n4, BigInt(a.p()));
  const double e = static_cast<double>(additive_energy(a, b));
  rep.rhs_terms = {{"(|A||B|)^{5/2}E+^{1/2}", std::pow(na * nb, 2.5) * std::sqrt(e)}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.envelope = log_envelope(a.p());
  rep.evaluate();
  return rep;
}

BoundReport small_doubling_energy_report(const FpSet& a) {
  BoundReport rep;
  rep.name = "E-times-small-doubling";
  if (a.empty()) throw std::invalid_argument("small doubling report needs a nonempty set");
  const double n = a.size();
  const double k = static_cast<double>(sumset(a, a).size()) / n;
  const BigInt ex = multiplicative_energy(a, a);
  rep.exact_lhs = Rational(ex);
  rep.lhs = static_cast<double>(ex);
  rep.rhs_terms = {{"K^{51/26}|A|^{32/13}", std::pow(k, 51.0 / 26) * std::pow(n, 32.0 / 13)},
                   {"K", k}};
  rep.rhs = rep.rhs_terms[0].value;
  rep.envelope = 1;
  rep.ratio = rep.lhs / rep.rhs;
  rep.passed = std::isfinite(rep.ratio) && rep.ratio > 0;
  const bool premise = n <= std::pow(a.p(), 13.0 / 23) * std::pow(k, 25.0 / 92);
  rep.notes.push_back(fmt::format("premise |A| <= p^(13/23) K^(25/92): {}", premise));
  return rep;
}

}  // namespace hypenergy
