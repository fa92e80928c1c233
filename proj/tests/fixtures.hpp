#pragma once

// Reference values produced by tests/oracles/compute_fixtures.py (mpmath,
// 50 significant digits). Regenerate with that script; do not edit by hand.

#include <array>
#include <cstdint>

namespace fixtures {

inline constexpr double g_1_1 = -0.38629436111989061883;          // 1 - 2 ln 2
inline constexpr double g_01_1 = -0.0048411977847573465774;
inline constexpr double g_m1_2 = -0.30685281944005469058;
inline constexpr double chernoff_upper_1_2 = 0.67957045711476130884;  // e^(1 - 2 ln 2)
inline constexpr double exact_geq_1_2 = 0.26424111765711535681;      // 1 - 2/e
inline constexpr double chernoff_lower_2_1 = 0.73575888234288464319;  // 2/e
inline constexpr double exact_leq_2_1 = 0.40600584970983807568;      // 3/e^2
inline constexpr double exp_m3 = 0.049787068367863942979;
inline constexpr double tail_abs_10_2_1_lower = 0.046489528076784487972;
inline constexpr double tail_rel_1_1_05_lower = 0.85776388496070679648;

inline constexpr double rhs_01_01_005 = 761.97660540300203384;
inline constexpr double rhs_02_01_005 = 380.98830270150101692;
inline constexpr double critical_01_01 = -0.0048411977847573465774;
inline constexpr double rhs_10_09_05 = 0.39047809748182112281;

inline constexpr double z_0975 = 1.9599639845400538556;
inline constexpr double z_0995 = 2.5758293035489004539;
inline constexpr double z_09 = 1.2815515655446005935;
inline constexpr double normal_raw_1_01_005 = 384.14588206941244691;
inline constexpr double normal_raw_1_1_005 = 3.8414588206941244691;

inline constexpr double pmf_2_0 = 0.13533528323661269189;
inline constexpr double pmf_1_1 = 0.3678794411714423216;
inline constexpr double cdf_1_1 = 0.73575888234288464319;
inline constexpr double pmf_3_3 = 0.22404180765538774341;
inline constexpr double pmf_1e6_1e6 = 0.0003989422471562440297;
inline constexpr double pmf_1e6_1001000 = 0.00024189010120174141723;
inline constexpr double pmf_100_80 = 0.0051978541259801803534;
inline constexpr double pmf_05_30 = 2.1295743841809945467e-42;

inline constexpr double coverage_1_1_1_05 = 0.3678794411714423216;    // e^-1
inline constexpr double coverage_1_1_10_01 = 0.99999998995223362431;
inline constexpr double coverage_1_3_05_01 = 0.22404180765538774341;
inline constexpr double coverage_762_1_01_01 = 0.99440960762524839159;
inline constexpr double coverage_20_045_01_03 = 0.59622754266935514836;

struct BudgetCase {
  double epsilon_a;
  double epsilon_r;
  double delta;
  std::int64_t formula_n;
};

// The 36-budget grid eps_a x eps_r x delta with the smallest integer above
// the closed-form right-hand side.
inline constexpr std::array<BudgetCase, 36> budget_grid = {{
    {0.01, 0.05, 0.2, 9363}, {0.01, 0.05, 0.05, 15000}, {0.01, 0.05, 0.01, 21544},
    {0.01, 0.1, 0.2, 4757},  {0.01, 0.1, 0.05, 7620},   {0.01, 0.1, 0.01, 10945},
    {0.01, 0.5, 0.2, 1065},  {0.01, 0.5, 0.05, 1705},   {0.01, 0.5, 0.01, 2449},
    {0.01, 0.9, 0.2, 649},   {0.01, 0.9, 0.05, 1040},   {0.01, 0.9, 0.01, 1493},
    {0.1, 0.05, 0.2, 937},   {0.1, 0.05, 0.05, 1500},   {0.1, 0.05, 0.01, 2155},
    {0.1, 0.1, 0.2, 476},    {0.1, 0.1, 0.05, 762},     {0.1, 0.1, 0.01, 1095},
    {0.1, 0.5, 0.2, 107},    {0.1, 0.5, 0.05, 171},     {0.1, 0.5, 0.01, 245},
    {0.1, 0.9, 0.2, 65},     {0.1, 0.9, 0.05, 104},     {0.1, 0.9, 0.01, 150},
    {1, 0.05, 0.2, 94},      {1, 0.05, 0.05, 150},      {1, 0.05, 0.01, 216},
    {1, 0.1, 0.2, 48},       {1, 0.1, 0.05, 77},        {1, 0.1, 0.01, 110},
    {1, 0.5, 0.2, 11},       {1, 0.5, 0.05, 18},        {1, 0.5, 0.01, 25},
    {1, 0.9, 0.2, 7},        {1, 0.9, 0.05, 11},        {1, 0.9, 0.01, 15},
}};

}  // namespace fixtures
