#pragma once

// Abelian energy functionals on subsets of F_p. All counts are exact.

#include <string>

#include "hypenergy/bound_report.hpp"
#include "hypenergy/field.hpp"

namespace hypenergy {

enum class EnergyMethod { Brute, Table, Spectral };

const char* to_string(EnergyMethod m);

struct EnergyReport {
  std::string name;
  BigInt value;
  EnergyMethod method = EnergyMethod::Table;
  std::string inputs;
};

/// E+(A,B) = #{a1 + b1 = a2 + b2} = sum_x r_{A+B}(x)^2.
BigInt additive_energy(const FpSet& a, const FpSet& b);
/// sum_x r_{A-A}(x) r_{B-B}(x); a second exact route to E+(A,B).
BigInt additive_energy_via_differences(const FpSet& a, const FpSet& b);
/// p^{-1} sum |A^|^2 |B^|^2 rounded to the nearest integer.
BigInt additive_energy_spectral(const FpSet& a, const FpSet& b);

/// E^x(A,B) = #{a1 b1 = a2 b2}, zeros included.
BigInt multiplicative_energy(const FpSet& a, const FpSet& b);

/// T_k^+(A) = #{a1 + ... + ak = a1' + ... + ak'}; T_1^+(A) = |A|^2.
/// Throws std::invalid_argument for k < 1.
BigInt t_plus_k(const FpSet& a, unsigned k);
/// p^{-1} sum |A^|^{2k}, rounded; k = 1 follows the |A|^2 convention.
BigInt t_plus_k_spectral(const FpSet& a, unsigned k);

/// E_k^+(A) = sum_x r_{A-A}(x)^k.
BigInt e_plus_k(const FpSet& a, unsigned k);

/// sum_x r_{(A-A)(B-B)}(x)^2, where r counts pairs (u, v) weighted by
/// r_{A-A}(u) r_{B-B}(v) with uv = x, zeros included.
BigInt d2_quantity(const FpSet& a, const FpSet& b);

EnergyReport measure_additive_energy(const FpSet& a, const FpSet& b, EnergyMethod method);

/// E^x(A,B) against |A|^2|B|^2/p for step-one progressions; envelope 64 on
/// |deviation| / (|A||B| log^2 p). Throws std::invalid_argument when A or B
/// is not a step-one progression.
BoundReport check_progression_energy(const FpSet& a, const FpSet& b);

/// d2_quantity - |A|^4|B|^4/p against (|A||B|)^{5/2} E+(A,B)^{1/2}, with
/// envelope 1024 (log p)^3.
BoundReport check_d2_bound(const FpSet& a, const FpSet& b);

/// E^x(A) / (K^{51/26} |A|^{32/13}) with K = |A+A|/|A|. Only positivity and
/// finiteness are asserted; the size premise is recorded in notes.
BoundReport small_doubling_energy_report(const FpSet& a);

}  // namespace hypenergy
