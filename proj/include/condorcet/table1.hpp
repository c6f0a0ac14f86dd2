#pragma once

// Three-candidate limit table. With candidates 0, 1, 2 the signs of
// (lambda_01, lambda_02, lambda_12) fall into one of 27 patterns, and the
// three-term limit
//
//   L(d01, d02; R_0) + L(d10, d12; R_1) + L(d20, d21; R_2)
//
// collapses to one of seven expressions. Each row below is data, and
// audit_table1() checks every row against a direct Monte Carlo evaluation of
// the three-term sum rather than trusting the table.
//
// R_0, R_1, R_2 denote the single off-diagonal correlation of each
// candidate's 2x2 matrix.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "asymptotic.hpp"
#include "culture.hpp"
#include "errors.hpp"
#include "orthant.hpp"

namespace condorcet {

enum class Table1Formula {
    Case1Sum,           // sum of three bivariate orthants
    HalfPlusArcsinR0,   // 1/2 + 1/4 + asin(R_0) / (2 pi)
    HalfPlusArcsinR1,   // 1/2 + 1/4 + asin(R_1) / (2 pi)
    HalfPlusArcsinR2,   // 1/2 + 1/4 + asin(R_2) / (2 pi)
    Half,
    One,
    Zero,
};

struct Table1Row {
    int number;
    std::array<int, 3> signs; // signs of lambda_01, lambda_02, lambda_12
    Table1Formula formula;
    std::string_view note;    // surviving terms for candidates 0, 1, 2
};

// clang-format off
inline constexpr std::array<Table1Row, 27> kTable1 = {{
    { 1, { 0,  0,  0}, Table1Formula::Case1Sum,         "L(0,0;R0) + L(0,0;R1) + L(0,0;R2)"},
    { 2, { 0,  0,  1}, Table1Formula::HalfPlusArcsinR0, "L(0,0;R0) + L(0) + 0"},
    { 3, { 0,  0, -1}, Table1Formula::HalfPlusArcsinR0, "L(0,0;R0) + 0 + L(0)"},
    { 4, { 0,  1,  0}, Table1Formula::HalfPlusArcsinR1, "L(0) + L(0,0;R1) + 0"},
    { 5, { 0, -1,  0}, Table1Formula::HalfPlusArcsinR1, "0 + L(0,0;R1) + L(0)"},
    { 6, { 0,  1, -1}, Table1Formula::Half,             "L(0) + 0 + 0"},
    { 7, { 0,  1,  1}, Table1Formula::One,              "L(0) + L(0) + 0"},
    { 8, { 0, -1,  1}, Table1Formula::Half,             "0 + L(0) + 0"},
    { 9, { 0, -1, -1}, Table1Formula::One,              "0 + 0 + 1"},
    {10, { 1,  0,  1}, Table1Formula::Half,             "L(0) + 0 + 0"},
    {11, { 1,  1,  0}, Table1Formula::One,              "1 + 0 + 0"},
    {12, { 1,  0, -1}, Table1Formula::One,              "L(0) + 0 + L(0)"},
    {13, { 1, -1,  0}, Table1Formula::Half,             "0 + 0 + L(0)"},
    {14, { 1,  1,  1}, Table1Formula::One,              "1 + 0 + 0"},
    {15, { 1, -1, -1}, Table1Formula::One,              "0 + 0 + 1"},
    {16, { 1,  1, -1}, Table1Formula::One,              "1 + 0 + 0"},
    {17, { 1, -1,  1}, Table1Formula::Zero,             "0 + 0 + 0"},
    {18, { 1,  0,  0}, Table1Formula::HalfPlusArcsinR2, "L(0) + 0 + L(0,0;R2)"},
    {19, {-1,  0,  0}, Table1Formula::HalfPlusArcsinR2, "0 + L(0) + L(0,0;R2)"},
    {20, {-1,  0,  1}, Table1Formula::One,              "0 + 1 + 0"},
    {21, {-1,  0, -1}, Table1Formula::Half,             "0 + 0 + L(0)"},
    {22, {-1,  1,  0}, Table1Formula::Half,             "0 + L(0) + 0"},
    {23, {-1,  1,  1}, Table1Formula::One,              "0 + 1 + 0"},
    {24, {-1,  1, -1}, Table1Formula::Zero,             "0 + 0 + 0"},
    {25, {-1, -1,  0}, Table1Formula::One,              "0 + L(0) + L(0)"},
    {26, {-1, -1,  1}, Table1Formula::One,              "0 + 1 + 0"},
    {27, {-1, -1, -1}, Table1Formula::One,              "0 + 0 + 1"},
}};
// clang-format on

[[nodiscard]] inline const Table1Row& table1_row(const std::array<int, 3>& signs) {
    for (const auto& row : kTable1)
        if (row.signs == signs)
            return row;
    throw DomainError("table1_row: signs must each be -1, 0 or +1");
}

struct Table1Classification {
    int case_number = 0;
    double value = 0.0;
    std::array<int, 3> signs{};
};

namespace detail {

// Off-diagonal of candidate i's 2x2 correlation matrix.
inline double m3_correlation(const Culture& c, const LambdaMatrix& lambda, Candidate i) {
    const Candidate j = i == 0 ? 1 : 0;
    const Candidate l = i == 2 ? 1 : 2;
    return correlation_entry(c, lambda, i, j, l);
}

inline double half_plus_arcsin(double rho) {
    return 0.5 + 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
}

} // namespace detail

/// Table row number and its value for a three-candidate culture.
[[nodiscard]] inline Table1Classification classify_m3(const Culture& c,
                                                      double tol = kDefaultSignTolerance) {
    if (c.m() != 3)
        throw DomainError("classify_m3: requires m = 3");
    const LambdaMatrix lambda = lambda_matrix(c);
    Table1Classification out;
    out.signs = {lambda_sign(lambda(0, 1), tol), lambda_sign(lambda(0, 2), tol),
                 lambda_sign(lambda(1, 2), tol)};
    const Table1Row& row = table1_row(out.signs);
    out.case_number = row.number;
    switch (row.formula) {
    case Table1Formula::Case1Sum:
        out.value = orthant2(detail::m3_correlation(c, lambda, 0)) +
                    orthant2(detail::m3_correlation(c, lambda, 1)) +
                    orthant2(detail::m3_correlation(c, lambda, 2));
        break;
    case Table1Formula::HalfPlusArcsinR0:
        out.value = detail::half_plus_arcsin(detail::m3_correlation(c, lambda, 0));
        break;
    case Table1Formula::HalfPlusArcsinR1:
        out.value = detail::half_plus_arcsin(detail::m3_correlation(c, lambda, 1));
        break;
    case Table1Formula::HalfPlusArcsinR2:
        out.value = detail::half_plus_arcsin(detail::m3_correlation(c, lambda, 2));
        break;
    case Table1Formula::Half: out.value = 0.5; break;
    case Table1Formula::One: out.value = 1.0; break;
    case Table1Formula::Zero: out.value = 0.0; break;
    }
    return out;
}

/// A three-candidate culture whose lambdas are exactly `magnitude` times the
/// requested signs: impartial culture plus the minimum-norm perturbation in
/// the span of the three pairwise sign vectors.
[[nodiscard]] inline Culture culture_for_signs(const std::array<int, 3>& signs,
                                               double magnitude = 0.1) {
    for (int s : signs)
        if (s < -1 || s > 1)
            throw DomainError("culture_for_signs: signs must be -1, 0 or +1");
    const auto& orders = cached_rank_orders(3);
    constexpr std::array<std::array<int, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
    Eigen::Matrix<double, 3, 6> a;
    for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 6; ++r)
            a(q, r) = orders[static_cast<std::size_t>(r)].prefers(pairs[static_cast<std::size_t>(q)][0],
                                                                  pairs[static_cast<std::size_t>(q)][1])
                          ? 1.0
                          : -1.0;
    Eigen::Vector3d target;
    for (int q = 0; q < 3; ++q)
        target(q) = magnitude * signs[static_cast<std::size_t>(q)];
    const Eigen::Matrix<double, 6, 1> shift =
        a.transpose() * (a * a.transpose()).ldlt().solve(target);
    std::vector<double> probs(6);
    for (int r = 0; r < 6; ++r) {
        probs[static_cast<std::size_t>(r)] = 1.0 / 6.0 + shift(r);
        if (probs[static_cast<std::size_t>(r)] < 0.0)
            throw DomainError("culture_for_signs: magnitude too large for a valid culture");
    }
    // Absorb rounding so the probabilities sum to 1 within the culture tolerance.
    double total = 0.0;
    for (double p : probs)
        total += p;
    probs[0] += 1.0 - total;
    return Culture(3, std::move(probs));
}

struct Table1AuditRow {
    int case_number = 0;
    std::array<int, 3> signs{};
    int classified_case = 0;   // classify_m3 on the constructed culture
    double table_value = 0.0;  // classify_m3 value
    double mc_value = 0.0;     // direct Monte Carlo of the three-term sum
    double mc_stderr = 0.0;
    bool pass = false;
};

/// Monte Carlo of L(d_i.; R_i) summed over the three candidates, sampling
/// the full bivariate normal of each candidate.
[[nodiscard]] inline McEstimate m3_limit_mc(const Culture& c, std::int64_t samples, std::uint64_t seed,
                                            double tol = kDefaultSignTolerance) {
    if (c.m() != 3)
        throw DomainError("m3_limit_mc: requires m = 3");
    const LambdaMatrix lambda = lambda_matrix(c);
    const DeltaMatrix delta = classify_deltas(lambda, tol);
    double value = 0.0, var = 0.0;
    for (Candidate i = 0; i < 3; ++i) {
        const CorrelationMatrix R = correlation_matrix(c, i);
        const std::vector<DeltaSign> row = delta.row(i);
        const McEstimate e = orthant_mc(R, samples, seed + 0x9e37ULL * static_cast<std::uint64_t>(i + 1), row);
        value += e.value;
        var += e.stderr_value * e.stderr_value;
    }
    return {value, std::sqrt(var)};
}

/// Every row against the direct Monte Carlo evaluation; a row passes when
/// the constructed culture lands in that row and the table value lies within
/// 4 standard errors of the Monte Carlo estimate.
[[nodiscard]] inline std::vector<Table1AuditRow> audit_table1(std::int64_t samples, std::uint64_t seed) {
    std::vector<Table1AuditRow> out;
    for (const auto& row : kTable1) {
        Table1AuditRow a;
        a.case_number = row.number;
        a.signs = row.signs;
        const Culture c = culture_for_signs(row.signs);
        const Table1Classification cls = classify_m3(c);
        a.classified_case = cls.case_number;
        a.table_value = cls.value;
        const McEstimate e = m3_limit_mc(c, samples, seed + 1000ULL * static_cast<std::uint64_t>(row.number));
        a.mc_value = e.value;
        a.mc_stderr = e.stderr_value;
        a.pass = a.classified_case == row.number &&
                 std::fabs(a.table_value - a.mc_value) <= 4.0 * a.mc_stderr;
        out.push_back(a);
    }
    return out;
}

} // namespace condorcet
