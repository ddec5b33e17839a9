#include "hypenergy/bound_report.hpp"

#include <limits>
#include <stdexcept>

namespace hypenergy {

double BoundReport::deviation() const {
  if (exact_lhs) return static_cast<double>(Rational(*exact_lhs - main_term));
  return lhs - static_cast<double>(main_term);
}

double BoundReport::rhs_term(const std::string& term_name) const {
  for (const auto& t : rhs_terms)
    if (t.name == term_name) return t.value;
  throw std::out_of_range("no rhs term named " + term_name);
}

namespace {

double safe_ratio(double num, double den) {
  if (den > 0) return num / den;
  if (num <= 0) return 0;
  return std::numeric_limits<double>::infinity();
}

}  // namespace

void BoundReport::evaluate() {
  const double dev = deviation();
  ratio = safe_ratio(dev, rhs);
  passed = dev <= envelope * rhs;
}

void BoundReport::evaluate_absolute() {
  const double dev = std::abs(deviation());
  ratio = safe_ratio(dev, rhs);
  passed = dev <= envelope * rhs;
}

}  // namespace hypenergy
