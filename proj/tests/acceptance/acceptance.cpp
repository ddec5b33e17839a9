// Acceptance run: one PASS/FAIL line per criterion with wall time against its budget.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hypenergy/energies.hpp"
#include "hypenergy/incidence.hpp"
#include "hypenergy/kloosterman.hpp"
#include "hypenergy/report_io.hpp"
#include "hypenergy/sl2.hpp"
#include "hypenergy/spectral.hpp"
#include "hypenergy/suites.hpp"

using namespace hypenergy;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Tally {
  std::size_t passed = 0, total = 0;
  std::string first_failure;
  void check(bool ok, const std::string& what) {
    ++total;
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = what;
  }
  Outcome outcome(const std::string& label) const {
    Outcome o{passed == total, fmt::format("{}: {}/{}", label, passed, total)};
    if (!o.ok) o.detail += fmt::format(" (first failure: {})", first_failure);
    return o;
  }
};

std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

FpSet rand_set(const ContextPtr& ctx, std::size_t n) {
  return random_subset(ctx, std::min<std::size_t>(n, ctx->p()), rng()());
}

std::uint32_t rand_prime(std::uint32_t lo, std::uint32_t hi) {
  for (;;) {
    const auto p = static_cast<std::uint32_t>(uniform(lo, hi));
    if (p > 2 && is_prime(p)) return p;
  }
}

WeightFn rand_weight(const ContextPtr& ctx) {
  std::normal_distribution<double> n;
  std::vector<Complex> v(ctx->p());
  for (auto& x : v) x = {n(rng()), n(rng())};
  return WeightFn(ctx, v);
}

std::string sizes(const FpSet& a, const FpSet& b) { return fmt::format("|A|={} |B|={}", a.size(), b.size()); }

// 1
Outcome t2_identity() {
  Tally t;
  for (int i = 0; i < 30; ++i) {
    const auto ctx = make_context(rand_prime(7, 101));
    const auto a = rand_set(ctx, uniform(1, 12)), b = rand_set(ctx, uniform(1, 12));
    const std::int64_t lambdas[] = {1, 2, static_cast<std::int64_t>(ctx->p()) - 1};
    const auto rep = t2_identity_check(a, b, lambdas[i % 3]);
    t.check(rep.holds, fmt::format("p={} {} {}", ctx->p(), sizes(a, b), rep.detail));
  }
  return t.outcome("exact T2 identity");
}

// 2
Outcome erk_identity() {
  Tally t;
  for (int i = 0; i < 10; ++i) {
    const auto ctx = make_context(rand_prime(7, 101));
    const auto a = rand_set(ctx, uniform(1, 10)), b = rand_set(ctx, uniform(1, 10));
    const auto lambda = static_cast<std::int64_t>(uniform(1, ctx->p() - 1));
    for (unsigned k : {2u, 3u})
      t.check(erk_identity_check(a, b, lambda, k).holds, fmt::format("k={} p={} {}", k, ctx->p(), sizes(a, b)));
  }
  return t.outcome("exact E^R_k identity, k = 2, 3");
}

// 3
Outcome t3_inequality() {
  Tally t;
  for (int i = 0; i < 10; ++i) {
    const auto ctx = make_context(rand_prime(7, 101));
    const auto a = rand_set(ctx, uniform(1, 8)), b = rand_set(ctx, uniform(1, 8));
    const auto lambda = static_cast<std::int64_t>(uniform(1, ctx->p() - 1));
    t.check(t3_inequality_check(a, b, lambda).holds, fmt::format("p={} {}", ctx->p(), sizes(a, b)));
  }
  return t.outcome("T3 inequality");
}

// 4
Outcome fourier() {
  Tally t;
  double worst = 0;
  for (std::uint32_t p : {11u, 101u, 401u}) {
    const auto ctx = make_context(p);
    for (int i = 0; i < 100; ++i) {
      const auto f = rand_weight(ctx), g = rand_weight(ctx);
      const auto F = dft(f), G = dft(g);
      Complex spec = 0;
      for (Residue xi = 0; xi < p; ++xi) spec += F[xi] * std::conj(G[xi]);
      const double plancherel = std::abs(spec / static_cast<double>(p) - inner_product(f, g)) /
                                (f.l2_norm() * g.l2_norm());
      const auto conv = dft(convolve(f, g));
      double conv_err = 0, scale = 0;
      for (Residue xi = 0; xi < p; ++xi) {
        conv_err = std::max(conv_err, std::abs(conv[xi] - F[xi] * G[xi]));
        scale = std::max(scale, std::abs(F[xi] * G[xi]));
      }
      const auto back = idft(F);
      double inv_err = 0;
      for (Residue x = 0; x < p; ++x) inv_err = std::max(inv_err, std::abs(back[x] - f[x]));
      const double rel = std::max({plancherel, conv_err / scale, inv_err / f.sup_norm()});
      worst = std::max(worst, rel);
      t.check(rel <= 1e-8, fmt::format("p={} relative error {}", p, rel));
    }
  }
  auto o = t.outcome("Plancherel, convolution, inversion");
  o.detail += fmt::format(", worst relative error {:.2e}", worst);
  return o;
}

// 5
std::uint64_t brute_t_plus(const FpSet& a, unsigned k) {
  const auto& F = a.field();
  const auto el = a.elements();
  const std::size_t n = el.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < 2 * k; ++i) total *= n;
  std::uint64_t hits = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    Residue s = 0;
    for (unsigned i = 0; i < 2 * k; ++i) {
      const Residue x = el[c % n];
      c /= n;
      s = i < k ? F.add(s, x) : F.sub(s, x);
    }
    hits += s == 0;
  }
  return hits;
}

Outcome energy_oracles() {
  Tally t;
  for (int i = 0; i < 50; ++i) {
    const auto ctx = make_context(rand_prime(7, 401));
    const auto a = rand_set(ctx, uniform(1, 10)), b = rand_set(ctx, uniform(1, 10));
    t.check(additive_energy_spectral(a, b) == additive_energy(a, b), fmt::format("spectral E+ p={}", ctx->p()));
    t.check(t_plus_k(a, 1) == BigInt(a.size() * a.size()), fmt::format("T_1+ p={}", ctx->p()));
    for (unsigned k = 2; k <= 3; ++k)
      t.check(t_plus_k(a, k) == brute_t_plus(a, k), fmt::format("T_{}+ p={} |A|={}", k, ctx->p(), a.size()));
    std::uint64_t ex = 0;
    const auto& F = *ctx;
    for (auto a1 : a) for (auto a2 : a) for (auto b1 : b) for (auto b2 : b) ex += F.mul(a1, b1) == F.mul(a2, b2);
    t.check(multiplicative_energy(a, b) == ex, fmt::format("E^x p={}", ctx->p()));
  }
  return t.outcome("energy oracle checks");
}

// 6
Outcome kloosterman() {
  Tally t;
  for (std::uint32_t p : {53u, 101u}) {
    const auto ctx = make_context(p);
    const KloostermanTable table(ctx);
    const double weil = 2 * std::sqrt(static_cast<double>(p));
    bool weil_ok = true, twist_ok = true;
    for (Residue n = 0; n < p; ++n)
      for (Residue m = 0; m < p; ++m) {
        if (n == 0 && m == 0) continue;
        const Complex direct = kloosterman_sum(*ctx, n, m);
        weil_ok = weil_ok && std::abs(direct) <= weil * (1 + 1e-12);
        twist_ok = twist_ok && std::abs(direct - kloosterman_sum(*ctx, ctx->mul(n, m), 1)) <= 1e-9 &&
                   std::abs(direct - table.lookup(n, m)) <= 1e-9;
      }
    t.check(weil_ok, fmt::format("Weil p={}", p));
    t.check(twist_ok, fmt::format("K(n,m)=K(nm,1) p={}", p));
    for (int i = 0; i < 25; ++i) {
      const auto a = rand_weight(ctx), b = rand_weight(ctx);
      const auto d = bilinear_form(a, b, FormMethod::Direct, &table);
      const auto s = bilinear_form(a, b, FormMethod::Spectral);
      t.check(std::abs(d - s) <= 1e-7 * std::abs(d), fmt::format("direct vs spectral p={}", p));
    }
  }
  return t.outcome("Weil grid, twist symmetry, 50 form pairs");
}

// 7
Outcome hyperbola() {
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const auto ctx = make_context(rand_prime(3, 101));
    const auto& F = *ctx;
    const auto a = rand_set(ctx, uniform(0, 15)), b = rand_set(ctx, uniform(0, 15));
    const auto c = rand_set(ctx, uniform(0, 15)), d = rand_set(ctx, uniform(0, 15));
    const auto lambda = static_cast<std::int64_t>(uniform(1, ctx->p() - 1));
    std::uint64_t brute = 0;
    for (auto x : a) for (auto y : b) for (auto z : c) for (auto w : d)
      brute += F.mul(F.add(x, y), F.add(z, w)) == F.reduce(lambda);
    const BigInt fast = count_hyperbola(a, b, c, d, lambda);
    t.check(fast == brute, fmt::format("fast path p={}", ctx->p()));
    const auto g = g_lambda_set(negate(b), c, lambda);
    const BigInt act(action_sum(g, projective_indicator(negate(d)), projective_indicator(a)));
    t.check(act == brute, fmt::format("action_sum p={}", ctx->p()));
  }
  return t.outcome("hyperbola count vs quadruple loop and action sum");
}

// 8
Outcome progression() {
  Tally t;
  double worst = 0;
  for (std::uint32_t p : {101u, 401u, 1009u}) {
    const auto ctx = make_context(p);
    for (std::size_t n : {10u, 30u, 100u}) {
      const auto a = interval(ctx, static_cast<std::int64_t>(uniform(0, p - 1)), n);
      const auto b = interval(ctx, static_cast<std::int64_t>(uniform(0, p - 1)), n);
      const auto rep = check_progression_energy(a, b);
      const double l = std::log2(static_cast<double>(p));
      const double allowed = 64.0 * static_cast<double>(n * n) * l * l;
      const double dev = std::abs(rep.deviation());
      worst = std::max(worst, dev / allowed);
      t.check(dev <= allowed && rep.passed, fmt::format("p={} n={} dev={} allowed={}", p, n, dev, allowed));
    }
  }
  auto o = t.outcome("progression energy within 64 |A||B| log^2 p");
  o.detail += fmt::format(", largest share of envelope {:.3g}", worst);
  return o;
}

// 9
Outcome free_group() {
  const auto rep = free_group_check(2, 2, 6, 3);
  return {!rep.relation_found,
          fmt::format("u_2, u*_2: {} reduced words, length <= 6, |exponent| <= 3, relation found: {}",
                      rep.words_checked, rep.relation_found)};
}

// 10
Outcome integer_mode() {
  Tally t;
  double worst = 0;
  auto run = [&](const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& c) {
    for (std::int64_t lambda : {1, 2})
      for (unsigned k : {1u, 2u}) {
        const auto res = t_2k_integer_mode(b, c, lambda, k);
        worst = std::max(worst, res.report.ratio);
        t.check(res.report.passed, fmt::format("|B|={} |C|={} lambda={} k={}", b.size(), c.size(), lambda, k));
      }
  };
  for (std::int64_t n = 1; n <= 8; ++n) {
    std::vector<std::int64_t> iv;
    for (std::int64_t i = 1; i <= n; ++i) iv.push_back(i);
    run(iv, iv);
  }
  for (int i = 0; i < 6; ++i) {
    std::vector<std::int64_t> b, c;
    for (std::int64_t x = 1; x <= 8; ++x) {
      if (uniform(0, 1)) b.push_back(x);
      if (uniform(0, 1)) c.push_back(x);
    }
    if (b.empty()) b.push_back(1);
    if (c.empty()) c.push_back(8);
    run(b, c);
  }
  auto o = t.outcome("T_2k integer bound");
  o.detail += fmt::format(", largest ratio {:.3g}", worst);
  return o;
}

// 11
Outcome actions() {
  Tally t;
  for (int i = 0; i < 20; ++i) {
    const auto ctx = make_context(rand_prime(5, 53));
    const auto p = ctx->p();
    const auto g = g_lambda_set(rand_set(ctx, uniform(1, 4)), rand_set(ctx, uniform(1, 4)),
                                static_cast<std::int64_t>(uniform(1, p - 1)));
    std::vector<std::int64_t> f1(p + 1), f2(p + 1);
    for (auto& v : f1) v = static_cast<std::int64_t>(uniform(0, 6)) - 3;
    for (auto& v : f2) v = static_cast<std::int64_t>(uniform(0, 6)) - 3;
    for (unsigned k : {1u, 2u})
      t.check(counting_lemma_check(g, f1, f2, k).passed, fmt::format("counting lemma k={} p={}", k, p));
  }
  for (int i = 0; i < 20; ++i) {
    const auto ctx = make_context(rand_prime(5, 101));
    const auto p = ctx->p();
    std::vector<AffineMap> maps;
    for (std::uint64_t j = 0, n = uniform(1, 60); j < n; ++j)
      maps.push_back({static_cast<Residue>(uniform(1, p - 1)), static_cast<Residue>(uniform(0, p - 1))});
    std::vector<ProjPoint> a, b;
    for (auto x : rand_set(ctx, uniform(1, 20))) a.push_back(ProjPoint::finite(x));
    for (auto x : rand_set(ctx, uniform(1, 20))) b.push_back(ProjPoint::finite(x));
    t.check(transitivity_bound_check(ctx, maps, a, b, 2).passed, fmt::format("affine p={}", p));
    const auto g = g_lambda_set(rand_set(ctx, uniform(1, 8)), rand_set(ctx, uniform(1, 8)),
                                static_cast<std::int64_t>(uniform(1, p - 1)));
    if (uniform(0, 1)) a.push_back(ProjPoint::infinity());
    t.check(transitivity_bound_check(ctx, g, a, b, 3).passed, fmt::format("projective p={}", p));
  }
  return t.outcome("counting lemma and k-transitivity");
}

// 12
Outcome trace_formula() {
  Tally t;
  const auto ctx = make_context(3);
  std::vector<FpMat> all;
  for (Residue a = 0; a < 3; ++a) for (Residue b = 0; b < 3; ++b)
    for (Residue c = 0; c < 3; ++c) for (Residue d = 0; d < 3; ++d)
      if (det(*ctx, FpMat{a, b, c, d}) == 1) all.push_back({a, b, c, d});
  for (int i = 0; i < 10; ++i) {
    std::shuffle(all.begin(), all.end(), rng());
    const FpMatSet g(ctx, std::vector<FpMat>(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(uniform(1, 24))));
    for (unsigned k : {2u, 3u}) {
      const auto rep = trace_formula_check(g, k);
      t.check(rep.holds, fmt::format("|G|={} k={} {}", g.size(), k, rep.detail));
    }
  }
  return t.outcome("trace formula in SL2(F_3)");
}

// 13
Outcome envelopes(const std::string& csv_path) {
  Tally t;
  std::vector<ExperimentRow> all;
  for (const char* suite : {"thm1", "progression", "rAA", "kloosterman-NM"}) {
    auto rows = run_suite(suite, {});
    for (const auto& r : rows)
      if (r.asserted) t.check(r.pass, fmt::format("{} {} p={} ratio={}", r.suite, r.check, r.p, r.ratio));
    all.insert(all.end(), rows.begin(), rows.end());
  }
  std::ofstream out(csv_path, std::ios::binary);
  write_csv(out, all);
  const bool written = static_cast<bool>(out);
  t.check(written, "writing " + csv_path);
  auto o = t.outcome("asserted envelope rows");
  o.detail += fmt::format(", {} rows archived to {}", all.size(), csv_path);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-13"};
  std::string csv = "acceptance_bounds.csv";
  app.add_option("--csv", csv, "Where to archive the envelope rows of criterion 13")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 10, t2_identity},   {2, 30, erk_identity},  {3, 60, t3_inequality},
      {4, 20, fourier},       {5, 30, energy_oracles}, {6, 60, kloosterman},
      {7, 60, hyperbola},     {8, 60, progression},   {9, 30, free_group},
      {10, 120, integer_mode}, {11, 60, actions},      {12, 30, trace_formula},
      {13, 300, [&] { return envelopes(csv); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.ok && in_time;
    failures += !ok;
    fmt::print("criterion {:>2}: {}  {:8.3f}s / {:>3.0f}s  {}{}\n", c.id, ok ? "PASS" : "FAIL", secs,
               c.budget_s, o.detail, in_time ? "" : "  [over budget]");
    std::cout.flush();
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
