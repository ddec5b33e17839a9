#include "hypenergy/kloosterman.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace hypenergy {

KloostermanTable::KloostermanTable(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("Kloosterman table needs a field");
  const auto& F = *ctx_;
  const auto p = F.p();
  const auto roots = unit_roots(p);
  const auto inv = F.inv_table();
  values_.assign(p, 0.0);
  for (Residue t = 0; t < p; ++t) {
    Complex s = 0;
    for (Residue x = 1; x < p; ++x) s += roots[F.add(F.mul(t, x), inv[x])];
    max_imag_ = std::max(max_imag_, std::abs(s.imag()));
    values_[t] = s.real();
  }
}

double KloostermanTable::lookup(std::int64_t n, std::int64_t m) const {
  const auto& F = *ctx_;
  const Residue a = F.reduce(n), b = F.reduce(m);
  if (a == 0 && b == 0) return static_cast<double>(F.p()) - 1;
  if (a == 0 || b == 0) return -1.0;
  return values_[F.mul(a, b)];
}

Complex kloosterman_sum(const FieldContext& F, std::int64_t n, std::int64_t m) {
  const auto p = F.p();
  const Residue a = F.reduce(n), b = F.reduce(m);
  const auto inv = F.inv_table();
  const double w = 2.0 * M_PI / p;
  Complex s = 0;
  for (Residue x = 1; x < p; ++x) {
    const Residue e = F.add(F.mul(a, x), F.mul(b, inv[x]));
    s += std::polar(1.0, w * e);
  }
  return s;
}

Complex bilinear_form(const WeightFn& alpha, const WeightFn& beta, FormMethod method,
                      const KloostermanTable* table) {
  if (alpha.p() != beta.p()) throw std::invalid_argument("weights over different fields");
  const auto& F = alpha.field();
  if (method == FormMethod::Spectral) {
    const auto fa = dft(alpha);
    const auto fb = dft(beta);
    const auto inv = F.inv_table();
    Complex s = 0;
    for (Residue x = 1; x < F.p(); ++x) s += fa[x] * fb[inv[x]];
    return s;
  }
  std::optional<KloostermanTable> own;
  if (!table || table->context()->p() != F.p()) {
    own.emplace(alpha.context());
    table = &*own;
  }
  Complex s = 0;
  for (auto n : alpha.support())
    for (auto m : beta.support()) s += alpha[n] * beta[m] * table->lookup(n, m);
  return s;
}

BasicBounds bound_basic(const WeightFn& alpha, const WeightFn& beta) {
  const double p = alpha.p();
  const double s = std::abs(bilinear_form(alpha, beta, FormMethod::Spectral));
  BasicBounds out;

  auto& pl = out.plancherel;
  pl.name = "kloosterman-basic-plancherel";
  pl.lhs = s;
  pl.rhs_terms = {{"p|a|_2|b|_2", p * alpha.l2_norm() * beta.l2_norm()}};
  pl.rhs = pl.rhs_terms[0].value;
  // Equality is attainable (alpha = delta_0), so allow rounding noise.
  pl.envelope = 1 + 1e-9;
  pl.evaluate();

  auto& w = out.weil;
  w.name = "kloosterman-basic-weil";
  w.lhs = s;
  w.rhs_terms = {{"2sqrt(p)|a|_1|b|_1", 2 * std::sqrt(p) * alpha.l1_norm() * beta.l1_norm()}};
  w.rhs = w.rhs_terms[0].value;
  w.envelope = 1 + 1e-9;
  w.evaluate();
  if (std::abs(alpha[0]) > kSupportTolerance && std::abs(beta[0]) > kSupportTolerance) {
    w.asserted = false;
    w.notes.push_back("alpha(0) beta(0) != 0: K(0,0) = p - 1 exceeds the Weil bound");
  }

  const double l2 = alpha.l2_norm() * beta.l2_norm();
  if (l2 > 0 && s > 0) pl.exponent = w.exponent = std::log(s / l2) / std::log(p);
  return out;
}

namespace {

void require_support_in(const WeightFn& f, std::int64_t len, std::int64_t shift, const char* name) {
  const auto& F = f.field();
  if (len < 1 || len > static_cast<std::int64_t>(F.p()))
    throw std::invalid_argument(fmt::format("progression length for {} must be in [1, p]", name));
  for (auto x : f.support()) {
    const Residue off = F.sub(x, F.reduce(shift));
    if (off < 1 || off > len)
      throw std::invalid_argument(
          fmt::format("supp {} contains {} outside [{}] + {}", name, x, len, shift));
  }
}

}  // namespace

BoundReport bound_thm_NM(const WeightFn& alpha, const WeightFn& beta, std::int64_t n,
                         std::int64_t m, std::int64_t t1, std::int64_t t2) {
  if (alpha.p() != beta.p()) throw std::invalid_argument("weights over different fields");
  require_support_in(alpha, n, t1, "alpha");
  require_support_in(beta, m, t2, "beta");
  const double p = alpha.p();
  const auto spec = dft(alpha);
  const double lq = spectrum_lq_norm(spec, 4.0 / 3.0);
  const double w = wiener_norm(spec);
  const double a2 = alpha.l2_norm(), a1 = alpha.l1_norm(), b2 = beta.l2_norm();
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);

  BoundReport rep;
  rep.name = "kloosterman-NM";
  rep.lhs = std::abs(bilinear_form(alpha, beta, FormMethod::Spectral));
  const double shared = std::sqrt(a2 * a1) * std::pow(p, 0.75);
  const double rhs1 = b2 * (lq * std::pow(nn * mm, 7.0 / 48) * std::pow(p, 23.0 / 24) + shared +
                            w * p);
  rep.rhs_terms = {{"first", rhs1}};
  rep.rhs = rhs1;
  const bool premise = mm * mm * nn * nn * std::pow(lq, 12) < p * std::pow(a2, 12);
  if (premise) {
    const double rhs2 =
        b2 * (std::pow(lq, 6.0 / 7) * std::pow(a2, 1.0 / 7) * std::pow(nn * mm, 1.0 / 7) *
                  std::pow(p, 13.0 / 14) +
              shared + lq * std::pow(p, 13.0 / 12));
    rep.rhs_terms.push_back({"second", rhs2});
    rep.rhs = std::min(rhs1, rhs2);
  }
  rep.notes.push_back(fmt::format("second-bound premise: {}", premise));
  rep.envelope = log_envelope(alpha.p());
  rep.evaluate();
  const double l2 = a2 * b2;
  if (l2 > 0 && rep.lhs > 0) rep.exponent = std::log(rep.lhs / l2) / std::log(p);
  return rep;
}

const char* to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::Interval: return "interval";
    case WeightFamily::RandomSign: return "random-sign";
    case WeightFamily::PointMass: return "point-mass";
    case WeightFamily::Factorized: return "factorized";
  }
  return "?";
}

std::vector<ScanRow> saving_exponent_scan(WeightFamily family, std::span<const std::uint32_t> primes,
                                          std::uint64_t seed) {
  std::vector<ScanRow> rows;
  for (auto p : primes) {
    const auto ctx = make_context(p);
    ScanRow row;
    row.family = family;
    row.p = p;
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p)));
    row.n = row.m = family == WeightFamily::PointMass ? 1 : root;
    row.t1 = 0;
    row.t2 = (p - 1) / 2;

    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * p));
    auto make = [&](std::int64_t len, std::int64_t shift) {
      std::vector<Complex> v(p, 0.0);
      for (std::int64_t i = 1; i <= len; ++i) {
        const Residue x = ctx->reduce(shift + i);
        switch (family) {
          case WeightFamily::Interval:
          case WeightFamily::PointMass: v[x] = 1.0; break;
          case WeightFamily::RandomSign: v[x] = (rng() & 1) ? 1.0 : -1.0; break;
          case WeightFamily::Factorized: break;
        }
      }
      if (family == WeightFamily::Factorized) {
        // alpha_1 random +-1 on F_p, alpha_2 the interval indicator.
        std::vector<Complex> a1(p), a2(p, 0.0);
        for (auto& c : a1) c = (rng() & 1) ? 1.0 : -1.0;
        for (std::int64_t i = 1; i <= len; ++i) a2[ctx->reduce(shift + i)] = 1.0;
        return WeightFn(ctx, a1) * WeightFn(ctx, a2);
      }
      return WeightFn(ctx, std::move(v));
    };
    const auto alpha = make(row.n, row.t1);
    const auto beta = make(row.m, row.t2);
    row.s_abs = std::abs(bilinear_form(alpha, beta, FormMethod::Spectral));
    row.norm_product = alpha.l2_norm() * beta.l2_norm();
    row.basic_holds = row.s_abs <= (1 + 1e-9) * p * row.norm_product;
    row.delta = row.s_abs > 0 ? 1 - std::log(row.s_abs / row.norm_product) / std::log(p) : HUGE_VAL;
    row.degenerate = alpha.support().size() <= 1 || beta.support().size() <= 1;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hypenergy
