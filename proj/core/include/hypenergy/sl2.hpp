#pragma once

// 2x2 matrix sets G_lambda(A,B) = { u_a v_b }, non-abelian energies T_k,
// E^R_k, E^L_k, the Moebius action on the projective line, and the integer
// (SL_2(Z)) mode.
//
// Alternating words: a word of length k built from g_1, ..., g_k is
// g_1 g_2^{-1} g_3 g_4^{-1} ..., so odd lengths end on an un-inverted factor.
// T_k(G) counts pairs of equal length-k words.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hypenergy/bound_report.hpp"
#include "hypenergy/field.hpp"

namespace hypenergy {

/// [[a, b], [c, d]] over F_p, entries in [0, p).
struct FpMat {
  Residue a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const FpMat&, const FpMat&) = default;
};

struct FpMatHash {
  std::size_t operator()(const FpMat& m) const noexcept {
    std::uint64_t h = m.a;
    h = h * 0x100000001b3ull ^ m.b;
    h = h * 0x100000001b3ull ^ m.c;
    h = h * 0x100000001b3ull ^ m.d;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

FpMat mat_mul(const FieldContext& F, const FpMat& x, const FpMat& y);
Residue det(const FieldContext& F, const FpMat& m);
FpMat adjugate(const FieldContext& F, const FpMat& m);
/// Throws std::domain_error for singular m.
FpMat mat_inverse(const FieldContext& F, const FpMat& m);
FpMat scale(const FieldContext& F, const FpMat& m, Residue s);

/// Lexicographic packing of (a, b, c, d) in base p; needs p < 2^16.
std::uint64_t encode(const FpMat& m, std::uint32_t p);
FpMat decode(std::uint64_t key, std::uint32_t p);

/// Representative of m in PGL_2: scaled so that its first nonzero entry is 1.
FpMat projective_normal_form(const FieldContext& F, const FpMat& m);

/// u_a = [[1, a], [0, 1]].
FpMat unipotent_u(const FieldContext& F, std::int64_t a);
/// u*_t = [[1, 0], [t, 1]].
FpMat lower_unipotent(const FieldContext& F, std::int64_t t);
/// v_b = [[0, lambda], [-1, b]]. Throws std::invalid_argument for lambda = 0.
FpMat v_matrix(const FieldContext& F, std::int64_t b, std::int64_t lambda);

/// Deduplicated set of invertible matrices over F_p.
class FpMatSet {
 public:
  static constexpr std::uint32_t kMaxPrime = (1u << 16) - 1;

  /// Drops duplicates. Throws std::invalid_argument on a singular matrix or
  /// when p exceeds kMaxPrime.
  FpMatSet(ContextPtr ctx, std::vector<FpMat> mats,
           std::optional<Residue> lambda = std::nullopt);

  const FieldContext& field() const noexcept { return *ctx_; }
  const ContextPtr& context() const noexcept { return ctx_; }
  std::span<const FpMat> elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  std::optional<Residue> lambda() const noexcept { return lambda_; }

  FpMatSet inverses() const;
  FpMatSet left_translate(const FpMat& g) const;
  FpMatSet right_translate(const FpMat& g) const;

 private:
  ContextPtr ctx_;
  std::vector<FpMat> elems_;
  std::optional<Residue> lambda_;
};

/// {u_a v_b : a in A, b in B} = {[[-a, ab + lambda], [-1, b]]}.
FpMatSet g_lambda_set(const FpSet& a, const FpSet& b, std::int64_t lambda);
/// {u_a v_a : a in A}.
FpMatSet g_diag_set(const FpSet& a, std::int64_t lambda);

/// A point of P^1(F_p): a residue or infinity.
class ProjPoint {
 public:
  static ProjPoint finite(Residue x) { return ProjPoint(x, false); }
  static ProjPoint infinity() { return ProjPoint(0, true); }

  bool is_infinity() const noexcept { return inf_; }
  /// Throws std::logic_error at infinity.
  Residue value() const;
  /// x for finite points, p for infinity.
  std::uint32_t index(std::uint32_t p) const noexcept { return inf_ ? p : x_; }
  static ProjPoint from_index(std::uint32_t i, std::uint32_t p) {
    return i == p ? infinity() : finite(i);
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  ProjPoint(Residue x, bool inf) : x_(x), inf_(inf) {}
  Residue x_;
  bool inf_;
};

/// (alpha x + beta) / (gamma x + delta) on P^1(F_p).
ProjPoint mobius_apply(const FieldContext& F, const FpMat& g, ProjPoint x);

/// Multiset of matrices: matrix -> multiplicity.
using MatCounts = std::unordered_map<FpMat, std::uint64_t, FpMatHash>;

struct WordLimits {
  /// Maximum number of distinct products held in one table.
  std::size_t max_entries = std::size_t{1} << 24;
};

/// r_{G G^{-1}}.
MatCounts ratio_counts(const FpMatSet& g);
/// r_{G^{-1} G}.
MatCounts left_ratio_counts(const FpMatSet& g);
/// r_{(G G^{-1})^m}; m = 0 gives the identity with multiplicity 1.
MatCounts ratio_power_counts(const FpMatSet& g, unsigned m, const WordLimits& limits = {});
/// Multiplicities of alternating words of length k over G.
MatCounts alternating_word_counts(const FpMatSet& g, unsigned k, const WordLimits& limits = {});

/// T_k(G), k >= 1, with T_1(G) = |G|^2. Throws std::length_error when a
/// product table exceeds limits.max_entries or multiplicities could overflow.
BigInt t_k_group(const FpMatSet& g, unsigned k, const WordLimits& limits = {});
/// T_k(A_1, ..., A_2k): left word over sets[0..k), right word over sets[k..2k).
BigInt t_k_sets(std::span<const FpMatSet> sets, const WordLimits& limits = {});

/// E^R_k(G) = sum_x r_{GG^{-1}}(x)^k and E^L_k(G) = sum_x r_{G^{-1}G}(x)^k.
BigInt e_rk_group(const FpMatSet& g, unsigned k);
BigInt e_lk_group(const FpMatSet& g, unsigned k);

/// A complex function on a finite set of matrices.
struct GroupFunction {
  ContextPtr ctx;
  std::vector<std::pair<FpMat, std::complex<double>>> values;
};

/// T_k(f) = sum_x |L(x)|^2, where L(x) sums prod f(g_i) over alternating
/// words equal to x; the right-hand word carries the conjugated values.
/// T_1(f) = |sum f|^2, matching T_1(G) = |G|^2.
double t_k_function(const GroupFunction& f, unsigned k, const WordLimits& limits = {});
/// (sum |f|^q)^{1/q}.
double function_lp_norm(const GroupFunction& f, double q);
GroupFunction add_functions(const GroupFunction& f, const GroupFunction& g);

/// sum_{g in G} sum_{x in P^1} f1(x) f2(gx); weights are indexed by
/// ProjPoint::index (length p + 1).
std::int64_t action_sum(const FpMatSet& g, std::span<const std::int64_t> f1,
                        std::span<const std::int64_t> f2);
std::complex<double> action_sum(const FpMatSet& g, std::span<const std::complex<double>> f1,
                                std::span<const std::complex<double>> f2);

/// Indicator on P^1 of a subset of F_p (infinity gets 0).
std::vector<std::int64_t> projective_indicator(const FpSet& s);

/// Exact form of the counting lemma for integer weights:
///   |sigma|^{2^k} <= |f1|_2^{2^k} |f2|_2^{2^k-2} sum_g r_{(GG^-1)^{2^{k-1}}}(g)
///                    sum_x f2(x) f2(gx).
/// passed is an exact comparison; lhs and rhs are reported as doubles.
BoundReport counting_lemma_check(const FpMatSet& g, std::span<const std::int64_t> f1,
                                 std::span<const std::int64_t> f2, unsigned k);

/// x -> scale * x + shift with scale != 0.
struct AffineMap {
  Residue scale = 1, shift = 0;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// The sharply 2-transitive affine group on F_p, or the sharply 3-transitive
/// Moebius group PGL_2 on P^1 (matrices are projected and deduplicated).
using TransitiveFamily = std::variant<std::vector<AffineMap>, FpMatSet>;

/// sum_{g in G} sum_{x in B} A(gx) <= |G|^{1-1/k} |A||B| + |G|, compared
/// exactly. k must be 2 for affine maps and 3 for matrices; anything else is
/// rejected with std::invalid_argument.
BoundReport transitivity_bound_check(const ContextPtr& ctx, const TransitiveFamily& family,
                                     std::span<const ProjPoint> a, std::span<const ProjPoint> b,
                                     unsigned k);

/// An exact identity between two integers computed by different routes.
struct IdentityReport {
  std::string name;
  BigInt lhs;
  BigInt rhs;
  bool holds = false;
  std::string detail;
};

/// Enumerates SL_2(F_p), builds T(g, h) = r_{GG^{-1}}(g h^{-1}) densely and
/// compares T_k(G) with trace(T^k) / |SL_2(F_p)| for k >= 2. G must lie in
/// SL_2.
/// Throws std::length_error when the group order exceeds max_group_order.
IdentityReport trace_formula_check(const FpMatSet& g, unsigned k,
                                   std::size_t max_group_order = 400);

/// T_2(G_lambda(A,B)) = |A|^2 (E+(B) - |B|^2) + |B|^2 E+(A).
IdentityReport t2_identity_check(const FpSet& a, const FpSet& b, std::int64_t lambda);
/// E^R_k(G_lambda(A,B)) = |A|^2 (E_k^+(B) - |B|^k) + |B|^k E_k^+(A).
IdentityReport erk_identity_check(const FpSet& a, const FpSet& b, std::int64_t lambda,
                                  unsigned k);
/// E^L_k(G_lambda(A,B)) <= |B|^2 E_k^+(A) + |A|^k E_k^+(B)  (holds = inequality).
IdentityReport elk_inequality_check(const FpSet& a, const FpSet& b, std::int64_t lambda,
                                    unsigned k);
/// T_3(G_lambda(A,B)) <= |A||B| d2(A,B) + |A|^4|B|^4  (holds = inequality).
IdentityReport t3_inequality_check(const FpSet& a, const FpSet& b, std::int64_t lambda);

// ---------------------------------------------------------------------------
// Integer mode

template <class T>
struct Mat2Z {
  T a{1}, b{0}, c{0}, d{1};
  friend bool operator==(const Mat2Z&, const Mat2Z&) = default;
};

using ZMat = Mat2Z<BigInt>;

ZMat zmat_mul(const ZMat& x, const ZMat& y);
BigInt det(const ZMat& m);
bool is_identity(const ZMat& m);

/// [[-b, bc + lambda], [-1, c]] for b in B, c in C (duplicates in B, C ignored).
std::vector<ZMat> g_lambda_integer(std::span<const std::int64_t> b, std::span<const std::int64_t> c,
                                   std::int64_t lambda);

enum class FreeGenerator { Upper, Lower };

struct FreeGroupReport {
  std::int64_t s = 0, t = 0;
  unsigned max_length = 0;
  unsigned exponent_cap = 0;
  std::uint64_t words_checked = 0;
  bool relation_found = false;
  /// The first word found equal to the identity, as (generator, exponent).
  std::vector<std::pair<FreeGenerator, int>> relation;
};

/// Enumerates every nonempty reduced word of length <= max_length in
/// u_s^n and (u*_t)^m, 0 < |n|, |m| <= exponent_cap, and tests it against
/// the identity. Throws std::invalid_argument unless |st| >= 4.
FreeGroupReport free_group_check(std::int64_t s, std::int64_t t, unsigned max_length = 6,
                                 unsigned exponent_cap = 3);

struct IntegerEnergyResult {
  BigInt value;
  BoundReport report;
};

/// T_{2k}(G_lambda(B, C)) over SL-type integer matrices, checked against
/// (8 max(|lambda|, 1))^{4k} |C|^{3k} |B|^{3k-1}. Needs lambda != 0,
/// |B|, |C| <= 12 and 1 <= k <= 2.
IntegerEnergyResult t_2k_integer_mode(std::span<const std::int64_t> b,
                                      std::span<const std::int64_t> c, std::int64_t lambda,
                                      unsigned k, const WordLimits& limits = {});

}  // namespace hypenergy
