#pragma once

// Scalar numerics shared by every module: compensated summation, the
// standard normal CDF, adaptive Gauss-Legendre quadrature and the binomial
// distribution function.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "errors.hpp"

namespace condorcet {

/// Neumaier's variant of Kahan summation. Summation order is the call order,
/// so identical input sequences always produce identical bits.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Phi(x). erfc keeps full relative precision in the lower tail.
[[nodiscard]] inline double std_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// 1 - Phi(x), computed without cancellation.
[[nodiscard]] inline double std_normal_sf(double x) noexcept {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

namespace detail {

// 10-point Gauss-Legendre rule on [-1, 1]; nodes are symmetric.
inline constexpr std::array<double, 5> gl_nodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659,
    0.6794095682990244062343274, 0.8650633666889845107320967,
    0.9739065285171717200779640};
inline constexpr std::array<double, 5> gl_weights = {
    0.2955242247147528701738930, 0.2692667193099963550912269,
    0.2190863625159820439955349, 0.1494513491505805931457763,
    0.0666713443086881375935688};

template <class F>
double gl_panel(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t k = 0; k < gl_nodes.size(); ++k) {
        const double dx = half * gl_nodes[k];
        s += gl_weights[k] * (f(mid - dx) + f(mid + dx));
    }
    return s * half;
}

template <class F>
double gl_adapt(const F& f, double a, double b, double whole, double tol,
                int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(f, a, mid);
    const double right = gl_panel(f, mid, b);
    const double refined = left + right;
    if (depth <= 0 || std::fabs(refined - whole) <= tol)
        return refined;
    return gl_adapt(f, a, mid, left, 0.5 * tol, depth - 1) +
           gl_adapt(f, mid, b, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Legendre quadrature of f over [a, b] to absolute
/// tolerance `tol`. Panels are bisected until the 10-point rule on the
/// panel agrees with the sum over its two halves.
template <class F>
[[nodiscard]] double integrate(const F& f, double a, double b,
                               double tol = 1e-12, int max_depth = 40) {
    if (a == b)
        return 0.0;
    return detail::gl_adapt(f, a, b, detail::gl_panel(f, a, b), tol, max_depth);
}

/// P(X <= k) for X ~ Binomial(n, p), through the regularized incomplete
/// beta relation P(X > k) = I_p(k + 1, n - k).
[[nodiscard]] inline double binomial_cdf(std::int64_t k, std::int64_t n,
                                         double p) {
    if (n < 0 || p < 0.0 || p > 1.0)
        throw DomainError("binomial_cdf: need n >= 0 and p in [0, 1]");
    if (k < 0)
        return 0.0;
    if (k >= n)
        return 1.0;
    if (p == 0.0)
        return 1.0;
    if (p == 1.0)
        return 0.0;
    return boost::math::ibetac(static_cast<double>(k + 1),
                               static_cast<double>(n - k), p);
}

/// P(X > k) for X ~ Binomial(n, p); avoids the cancellation in 1 - cdf.
[[nodiscard]] inline double binomial_upper_tail(std::int64_t k, std::int64_t n,
                                                double p) {
    if (n < 0 || p < 0.0 || p > 1.0)
        throw DomainError("binomial_upper_tail: need n >= 0 and p in [0, 1]");
    if (k < 0)
        return 1.0;
    if (k >= n)
        return 0.0;
    if (p == 0.0)
        return 0.0;
    if (p == 1.0)
        return 1.0;
    return boost::math::ibeta(static_cast<double>(k + 1),
                              static_cast<double>(n - k), p);
}

/// log C(n, k).
[[nodiscard]] inline double log_binomial(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// Worker cap from CONDORCET_THREADS; 1 when unset or unparsable.
[[nodiscard]] inline unsigned thread_cap_from_env() {
    const char* raw = std::getenv("CONDORCET_THREADS");
    if (raw == nullptr)
        return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1)
        return 1;
    return static_cast<unsigned>(v);
}

} // namespace condorcet
