#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hypenergy/field.hpp"

namespace hypenergy {

/// log base 2, the convention behind every envelope below.
inline double log2p(std::uint64_t p) { return std::log2(static_cast<double>(p)); }

/// Default envelope for inequalities stated up to log factors: 1024 (log p)^3.
inline double log_envelope(std::uint64_t p) {
  const double l = log2p(p);
  return 1024.0 * l * l * l;
}

struct BoundTerm {
  std::string name;
  double value = 0;
};

/// Outcome of comparing an exactly computed quantity against an inequality.
///
/// The checked statement is  lhs - main_term <= envelope * rhs, where rhs is
/// derived from rhs_terms (a sum or, for "min" bounds, the smaller branch).
struct BoundReport {
  std::string name;
  /// Exact value when the left side is an integer or rational count.
  std::optional<Rational> exact_lhs;
  double lhs = 0;
  Rational main_term = 0;
  std::vector<BoundTerm> rhs_terms;
  double rhs = 0;
  double envelope = 1;
  /// (lhs - main_term) / rhs.
  double ratio = 0;
  bool passed = false;
  /// Whether failing this report should fail a run; reporting-only bounds
  /// with unspecified constants set this to false.
  bool asserted = true;
  std::optional<double> exponent;
  std::vector<std::string> notes;

  double deviation() const;
  double rhs_term(const std::string& term_name) const;

  /// Fills ratio and passed from lhs/main_term/rhs/envelope.
  void evaluate();
  /// Same with |lhs - main_term| in place of lhs - main_term.
  void evaluate_absolute();
};

}  // namespace hypenergy
