#pragma once

// Prime field arithmetic, canonical subsets of F_p and representation
// functions r_{A+B}, r_{A-B}, r_{AB}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypenergy {

using Residue = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

bool is_prime(std::uint64_t n);

/// Arena for all F_p computation: the modulus plus inverse and discrete-log
/// tables. Immutable once built; share it through ContextPtr.
class FieldContext {
 public:
  /// Largest modulus for which tables are built.
  static constexpr std::uint32_t kMaxPrime = 1u << 24;

  /// Throws std::invalid_argument unless p is an odd prime <= kMaxPrime.
  explicit FieldContext(std::int64_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue x, Residue y) const noexcept {
    std::uint32_t s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue x, Residue y) const noexcept {
    return x >= y ? x - y : x + p_ - y;
  }
  Residue neg(Residue x) const noexcept { return x == 0 ? 0 : p_ - x; }
  Residue mul(Residue x, Residue y) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(x) * y % p_);
  }
  Residue pow(Residue x, std::uint64_t e) const noexcept;

  /// Throws std::domain_error for x == 0.
  Residue inv(Residue x) const;
  Residue div(Residue x, Residue y) const { return mul(x, inv(y)); }

  /// Smallest generator of F_p^*.
  Residue primitive_root() const noexcept { return root_; }
  /// k with g^k = x, for x != 0. Throws std::domain_error for x == 0.
  std::uint32_t dlog(Residue x) const;
  /// g^k for k in [0, p-2].
  Residue exp(std::uint32_t k) const noexcept { return exp_[k % (p_ - 1)]; }

  std::span<const Residue> inv_table() const noexcept { return inv_; }
  std::span<const std::uint32_t> dlog_table() const noexcept { return dlog_; }

 private:
  std::uint32_t p_;
  Residue root_ = 0;
  std::vector<Residue> inv_;
  std::vector<std::uint32_t> dlog_;
  std::vector<Residue> exp_;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

/// Validates p and builds all tables.
ContextPtr make_context(std::int64_t p);

/// A subset of F_p held as a strictly increasing residue list.
class FpSet {
 public:
  /// Reduces every element mod p, sorts and removes duplicates.
  FpSet(ContextPtr ctx, std::span<const std::int64_t> elements);
  FpSet(ContextPtr ctx, std::initializer_list<std::int64_t> elements);
  /// Takes residues that may be unsorted or repeated.
  static FpSet from_residues(ContextPtr ctx, std::vector<Residue> residues);

  static FpSet empty_set(ContextPtr ctx);
  static FpSet whole_field(ContextPtr ctx);

  const FieldContext& field() const noexcept { return *ctx_; }
  const ContextPtr& context() const noexcept { return ctx_; }
  std::uint32_t p() const noexcept { return ctx_->p(); }

  std::span<const Residue> elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  bool contains(Residue x) const noexcept;

  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }

  bool operator==(const FpSet& other) const noexcept {
    return ctx_->p() == other.ctx_->p() && elems_ == other.elems_;
  }

  std::string to_string() const;

 private:
  FpSet(ContextPtr ctx, std::vector<Residue> sorted_unique, int);
  void build_index();

  static constexpr std::uint32_t kBitmapLimit = 1u << 20;

  ContextPtr ctx_;
  std::vector<Residue> elems_;
  std::vector<bool> bitmap_;  // populated when p <= kBitmapLimit
};

/// Throws std::invalid_argument when the two sets live over different primes.
void require_same_field(const FpSet& a, const FpSet& b);

FpSet sumset(const FpSet& a, const FpSet& b);
FpSet difference_set(const FpSet& a, const FpSet& b);
FpSet product_set(const FpSet& a, const FpSet& b);
/// {a/b : b != 0}.
FpSet quotient_set(const FpSet& a, const FpSet& b);
/// m * A.
FpSet dilate(const FpSet& a, std::int64_t m);
FpSet translate(const FpSet& a, std::int64_t t);
FpSet negate(const FpSet& a);
/// {a^{-1} : a in A, a != 0}.
FpSet inverse_set(const FpSet& a);
FpSet intersection(const FpSet& a, const FpSet& b);
FpSet set_union(const FpSet& a, const FpSet& b);

// Families.
FpSet interval(ContextPtr ctx, std::int64_t start, std::size_t length);
FpSet arithmetic_progression(ContextPtr ctx, std::int64_t start, std::int64_t step,
                             std::size_t length);
/// {g^0, g^1, ..., g^{length-1}}.
FpSet geometric_progression(ContextPtr ctx, std::int64_t g, std::size_t length);
/// The multiplicative subgroup of order d; d must divide p-1.
FpSet multiplicative_subgroup(ContextPtr ctx, std::uint32_t d);
/// n distinct residues drawn with mt19937_64 seeded from (seed, p).
FpSet random_subset(ContextPtr ctx, std::size_t n, std::uint64_t seed);

/// True when A = {s, s+1, ..., s+n-1} mod p for some s (empty and
/// singleton sets count).
bool is_unit_step_progression(const FpSet& a);

enum class Sign { Plus, Minus };

/// values[x] = r(x) for a representation function on F_p.
struct RepTable {
  ContextPtr ctx;
  std::vector<std::uint64_t> values;

  std::uint64_t operator[](Residue x) const { return values[x]; }
  std::uint64_t total() const noexcept;
  std::uint64_t max() const noexcept;
};

/// r_{A+B} or r_{A-B}; O(|A||B|).
RepTable rep_additive(const FpSet& a, const FpSet& b, Sign sign);
/// r_{AB}. Products with a zero factor all land on 0; the nonzero part is a
/// cyclic convolution in discrete-log coordinates.
RepTable rep_multiplicative(const FpSet& a, const FpSet& b);

/// h(x) = sum_{uv = x} f(u) g(v) over all of F_p x F_p. f and g have length p.
/// The x = 0 entry is filled combinatorially, the rest through dlog indices.
std::vector<std::uint64_t> multiplicative_convolution(const FieldContext& ctx,
                                                      std::span<const std::uint64_t> f,
                                                      std::span<const std::uint64_t> g);

/// Sum of squares of a table, exact.
BigInt sum_of_squares(std::span<const std::uint64_t> values);
/// Sum of k-th powers of a table, exact.
BigInt sum_of_powers(std::span<const std::uint64_t> values, unsigned k);

}  // namespace hypenergy
