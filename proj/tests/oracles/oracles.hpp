#pragma once

// Values computed once by independent brute-force enumeration and frozen here.

#include <cstdint>

namespace oracles {

// E+({1,2,3}) over F_101.
inline constexpr std::uint64_t kAdditiveEnergy123 = 19;
// E^x({1,2,4}) over F_7.
inline constexpr std::uint64_t kMultEnergySubgroup7 = 27;
// T_3^+({0,1}) over F_101.
inline constexpr std::uint64_t kT3Plus01 = 20;
// E_3^+({1,2,3}) over F_101.
inline constexpr std::uint64_t kE3Plus123 = 45;
// d2({0,1},{0,1}) over F_7, 2^8 tuples.
inline constexpr std::uint64_t kD2Binary7 = 152;

// K(1,1) over F_5.
inline constexpr double kKloosterman5 = 0.381966011250105;
// sum alpha(n) beta(m) K(n,m) over F_7 with alpha = d1 + 2 d3, beta = d2 - d5.
inline constexpr double kBilinear7 = -8.728857226022267;

// |(A+i) cap (A+i)^{-1}| for A = [20] in F_101, i = 2, 4, ..., 10.
inline constexpr std::uint64_t kShiftProfile[5] = {4, 6, 4, 6, 6};

// (a+b)(c+d) = 1 with A = B = C = D = F_7.
inline constexpr std::uint64_t kHyperbolaFull7 = 294;
// A={1,2,5}, B={0,3}, C={4,7,8}, D={2,11}, lambda = 6 over F_13.
inline constexpr std::uint64_t kHyperbola13 = 4;

// G = {[[1,1],[0,1]], [[2,0],[0,3]], [[0,1],[4,0]], [[1,0],[2,1]]} in SL_2(F_5).
inline constexpr std::uint64_t kSl2F5T2 = 28;
inline constexpr std::uint64_t kSl2F5T3 = 262;
// G_3({1,2},{0,3}) over F_7.
inline constexpr std::uint64_t kGLambda7T2 = 32;
inline constexpr std::uint64_t kGLambda7ER2 = 32;
inline constexpr std::uint64_t kGLambda7ER3 = 88;
inline constexpr std::uint64_t kGLambda7EL2 = 32;

// Integer mode, G_lambda(B, C) = {[[-b, bc + lambda], [-1, c]]}.
inline constexpr std::uint64_t kIntT2Pair = 32;        // B = C = {1,2}, lambda = 1
inline constexpr std::uint64_t kIntT4Pair = 3328;      // B = C = {1,2}, lambda = 1
inline constexpr std::uint64_t kIntT4Four = 12264960;  // B = C = [4], lambda = 2

// Indicator of [10] in F_101.
inline constexpr double kLq43Interval10 = 2.32289181722357;
inline constexpr double kWienerInterval10 = 1.92215126119655;

}  // namespace oracles
