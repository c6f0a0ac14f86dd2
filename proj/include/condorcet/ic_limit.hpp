#pragma once

// Impartial-culture limit P(m) = m * L_{m-1}(1/3): m times the all-zero
// orthant of an (m-1)-variate normal with every correlation equal to 1/3.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"
#include "orthant.hpp"

namespace condorcet {

namespace detail {

inline constexpr double kKernelTol = 1e-11;

// asin(x / (1 + 2x)) / sqrt(1 - x^2)
inline double ic_kernel(double x) {
    return std::asin(x / (1.0 + 2.0 * x)) / std::sqrt(1.0 - x * x);
}

// Integral of the kernel over [0, upper].
inline double ic_single(double upper) {
    return integrate(ic_kernel, 0.0, upper, kKernelTol);
}

// Iterated integral over 0 <= mu <= upper, 0 <= x <= mu / (1 + 2 mu).
inline double ic_double(double upper) {
    const auto outer = [](double mu) {
        return ic_single(mu / (1.0 + 2.0 * mu)) / std::sqrt(1.0 - mu * mu);
    };
    return integrate(outer, 0.0, upper, kKernelTol);
}

} // namespace detail

/// Printed closed forms for 3 <= m <= 7.
[[nodiscard]] inline double ic_limit_closed(int m) {
    const double pi = std::numbers::pi;
    const double as = std::asin(1.0 / 3.0);
    switch (m) {
    case 3: return 0.75 + 3.0 / (2.0 * pi) * as;
    case 4: return 0.5 * (1.0 + 6.0 / pi * as);
    case 5: return 5.0 / 16.0 * (1.0 + 12.0 / pi * as + 24.0 / (pi * pi) * detail::ic_single(1.0 / 3.0));
    case 6: return 3.0 / 16.0 * (1.0 + 20.0 / pi * as + 120.0 / (pi * pi) * detail::ic_single(1.0 / 3.0));
    case 7:
        return 7.0 / 64.0 * (1.0 + 30.0 / pi * as + 360.0 / (pi * pi) * detail::ic_single(1.0 / 3.0) +
                             720.0 / (pi * pi * pi) * detail::ic_double(1.0 / 3.0));
    default: throw DomainError("ic_limit_closed: m must lie in [3, 7]");
    }
}

/// m times the single-integral orthant with a = 1 (rho = 1/3).
[[nodiscard]] inline double ic_limit_sampford(int m) {
    if (m < 2)
        throw DomainError("ic_limit_sampford: m must be >= 2");
    return static_cast<double>(m) * sampford_integral(m - 1, 1.0);
}

/// Equicorrelated orthant L_d(rho) for odd d >= 3 from lower dimensions:
///   2 L_d = sum_{k=0}^{d-1} (-1)^k C(d, k) L_k,   L_0 = 1, L_1 = 1/2.
/// L_2 is the arcsine form, odd k recurse, and even k >= 4 come from the
/// single integral (which needs rho >= 0).
[[nodiscard]] inline double bacon_recursion(double rho, int d) {
    if (d < 3 || d % 2 == 0)
        throw DomainError("bacon_recursion: d must be odd and >= 3");
    if (!(std::fabs(rho) < 1.0))
        throw DomainError("bacon_recursion: |rho| must be < 1");
    if (d >= 5 && rho < 0.0)
        throw DomainError("bacon_recursion: d >= 5 needs rho >= 0 for the even-dimension terms");
    std::vector<double> L(static_cast<std::size_t>(d) + 1);
    L[0] = 1.0;
    L[1] = 0.5;
    L[2] = orthant2(rho);
    for (int k = 3; k <= d; ++k) {
        if (k % 2 == 0) {
            L[static_cast<std::size_t>(k)] = sampford_orthant(k, rho);
            continue;
        }
        double s = 0.0;
        double binom = 1.0; // C(k, j)
        for (int j = 0; j < k; ++j) {
            s += (j % 2 == 0 ? 1.0 : -1.0) * binom * L[static_cast<std::size_t>(j)];
            binom = binom * (k - j) / (j + 1);
        }
        L[static_cast<std::size_t>(k)] = 0.5 * s;
    }
    return L[static_cast<std::size_t>(d)];
}

/// Upper bound 2 pi sqrt(2) / sqrt(2m + 1) on P(m).
[[nodiscard]] inline double may_bound(int m) {
    if (m < 2)
        throw DomainError("may_bound: m must be >= 2");
    return 2.0 * std::numbers::pi * std::numbers::sqrt2 / std::sqrt(2.0 * m + 1.0);
}

struct IcCurveRow {
    int m;
    double probability;
};

[[nodiscard]] inline std::vector<IcCurveRow> ic_curve(std::span<const int> ms) {
    std::vector<IcCurveRow> rows;
    rows.reserve(ms.size());
    for (int m : ms) {
        if (m < 2)
            throw DomainError("ic_curve: every m must be >= 2");
        rows.push_back({m, ic_limit_sampford(m)});
    }
    return rows;
}

/// CSV `m,probability`.
[[nodiscard]] inline std::string ic_curve_csv(std::span<const IcCurveRow> rows) {
    std::string out = "m,probability\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", r.m, r.probability);
        out += buf;
    }
    return out;
}

} // namespace condorcet
