#pragma once

// Hyperbola incidences #{(a+b)(c+d) = lambda} over F_p and over the
// rationals, and the inequality evaluators built on them.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hypenergy/bound_report.hpp"
#include "hypenergy/field.hpp"

namespace hypenergy {

/// #{(a,b,c,d) in A x B x C x D : (a+b)(c+d) = lambda}. Throws
/// std::invalid_argument for lambda = 0 mod p.
BigInt count_hyperbola(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                       std::int64_t lambda);

/// count_hyperbola - |A||B||C||D|/p.
Rational hyperbola_deviation(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                             std::int64_t lambda);

/// rhs |A|^{1/4}|B||C||D|^{1/2} + |A|^{3/4}(|B||C|)^{41/48}|D|^{1/2}.
BoundReport bound_thm1(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                       std::int64_t lambda);

/// rhs = min of the energy branch
///   |D|^{1/2}|B||C| + |A||D|^{1/2}(|B||C|)^{1/3}(|B|^{1/3}E+(C)^{1/6} + |C|^{1/3}E+(B)^{1/6})
/// and the mixed-energy branch
///   |A|^{1/4}|B||C||D|^{1/2} + |A|^{3/4}(|B||C|)^{19/24}|D|^{1/2}E+(B,C)^{1/24}.
BoundReport bound_thm_hyp_full(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                               std::int64_t lambda);

/// B and C step-one progressions; rhs
///   |A|^{1/4}|B||C||D|^{1/2} + |A|^{3/4}|D|^{1/2}(|B||C|)^{5/6}(1 + (|B||C|/p)^{1/12}).
/// Throws std::invalid_argument when B or C is not such a progression.
BoundReport bound_progression(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& d,
                              std::int64_t lambda);

/// r_{AA}(lambda) against K^2|A|^2/p + K^{5/4}|A|^{23/24}, K = |A+A|/|A|.
/// Both size premises on A - A are evaluated exactly and recorded in notes.
BoundReport bound_rAA(const FpSet& a, std::int64_t lambda);
/// r_{AA}(lambda) against K^2|A|^2/p + |A|^{149/156}; the implied constant
/// depends on K, so the report is not asserted.
BoundReport bound_rAA_refined(const FpSet& a, std::int64_t lambda);

/// Exact evaluation of |A - A|^92 <= p^52 and |A - A|^117 <= p^52 |2A - 2A|^25.
struct RAAPremises {
  std::size_t diff_size = 0;
  std::size_t double_diff_size = 0;
  bool statement_premise = false;
  bool proof_premise = false;
};
RAAPremises raa_premises(const FpSet& a);

/// (i, |(A+i) cap (A+i)^{-1}|) for i = 2, 4, ..., 2N, with the first
/// minimizing i. Needs N >= 1 and 2N < p.
struct ShiftInverseProfile {
  std::vector<std::pair<std::int64_t, std::uint64_t>> rows;
  std::int64_t argmin = 0;
  std::uint64_t min_value = 0;
};
ShiftInverseProfile shift_inverse_profile(const FpSet& a, std::int64_t n);

// ---------------------------------------------------------------------------
// Rational mode

/// Sorted, deduplicated finite set of rationals.
using RationalSet = std::vector<Rational>;

RationalSet make_rational_set(std::vector<Rational> xs);
RationalSet integer_set(std::span<const std::int64_t> xs);
/// {w, 2w, ..., Nw}.
RationalSet scaled_interval(std::int64_t omega, std::int64_t n);

/// #{(a,b,c,d) : (a+b)(c+d) = lambda} over Q. Throws for lambda = 0.
BigInt count_hyperbola_rational(const RationalSet& a, const RationalSet& b, const RationalSet& c,
                                const RationalSet& d, const Rational& lambda);
/// #{(a,b,d) : (a+b)(b+d) = 1}, b shared between the factors.
BigInt count_shared_hyperbola(const RationalSet& a, const RationalSet& b, const RationalSet& d);

/// E+(B) = #{b1 + b2 = b3 + b4} for a set of integers.
BigInt integer_additive_energy(std::span<const std::int64_t> b);

struct RhoResult {
  double rho = 0;
  unsigned k_star = 2;
  /// (|B|^k |C|^{k-1})^{-1/(8k-6)} at k_star.
  double comparison = 0;
  unsigned k_max = 20;
};

/// max over k in [2, 20] of (E+(C)^{k-1}E+(B)^{k-2} / (|B|^{4k-6}|C|^{4k-4}))^{1/(8k-6)}.
RhoResult rho_bound(std::span<const std::int64_t> b, std::span<const std::int64_t> c);

/// Envelope for rational-mode bounds: 1024 (log n)^3 with n the largest
/// cardinality involved (at least 2).
double integer_envelope(std::size_t n);

/// Count over A, D rational and B, C integer against
/// sqrt(|A||D|)|B||C| max(|D|^{-1/2}, rho(B,C)); the l-refined right side is
/// reported for the smallest l <= 20 meeting its premise.
BoundReport bound_asym_Z(const RationalSet& a, std::span<const std::int64_t> b,
                         std::span<const std::int64_t> c, const RationalSet& d,
                         const Rational& lambda);

/// #{(a+b)(b+d) = 1 : b in w.[N]} against sqrt(|A||D|) N max(|D|^{-1/2}, N^{-1/5});
/// the l-refined side sqrt(|A||D|) N^{2/3}|D|^{1/6l} is reported for the
/// smallest l with |D|^2 >= N^l. Needs |w| >= 2 and N >= 1.
BoundReport bound_prop_Re(const RationalSet& a, const RationalSet& d, std::int64_t omega,
                          std::int64_t n);

/// Q u (Q^{-1} + 1) u ... u (Q^{-1} + N) with Q = {2, ..., 2M + 1}.
RationalSet inverse_shift_example(std::int64_t m, std::int64_t n);

}  // namespace hypenergy
