#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's enumeration, margin or quadrature code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<std::vector<int>> permutations(int m) {
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline bool ranks_above(const std::vector<int>& order, int i, int j) {
    for (int c : order) {
        if (c == i)
            return true;
        if (c == j)
            return false;
    }
    return false;
}

/// P(winner) by iterating over all K^n ordered voter sequences.
inline double sequence_winner_probability(int m, const std::vector<double>& p, int n, int need) {
    const auto orders = permutations(m);
    const std::size_t k = orders.size();
    std::vector<std::size_t> seq(static_cast<std::size_t>(n), 0);
    long double total = 0.0L;
    for (;;) {
        long double w = 1.0L;
        for (auto s : seq)
            w *= p[s];
        if (w > 0.0L) {
            bool any = false;
            for (int i = 0; i < m && !any; ++i) {
                bool all = true;
                for (int j = 0; j < m && all; ++j) {
                    if (i == j)
                        continue;
                    int margin = 0;
                    for (auto s : seq)
                        margin += ranks_above(orders[s], i, j) ? 1 : -1;
                    all = margin >= need;
                }
                any = all;
            }
            if (any)
                total += w;
        }
        std::size_t pos = 0;
        while (pos < seq.size() && ++seq[pos] == k)
            seq[pos++] = 0;
        if (pos == seq.size())
            break;
    }
    return static_cast<double>(total);
}

/// P(X > k), X ~ Binomial(n, p), by summing the pmf in long double.
inline double binomial_upper_tail(int k, int n, double p) {
    long double s = 0.0L;
    for (int x = k + 1; x <= n; ++x) {
        long double c = 1.0L;
        for (int t = 0; t < x; ++t)
            c = c * (n - t) / (t + 1);
        s += c * std::pow(static_cast<long double>(p), x) *
             std::pow(static_cast<long double>(1.0 - p), n - x);
    }
    return static_cast<double>(s);
}

/// Random culture: normalized exponentials (flat Dirichlet), optionally
/// zeroing entries to create sparse supports.
inline std::vector<double> random_culture(std::mt19937_64& rng, std::size_t k, double zero_prob = 0.0) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(k);
    double total = 0.0;
    for (auto& x : p) {
        x = u(rng) < zero_prob ? 0.0 : expo(rng);
        total += x;
    }
    if (total == 0.0) {
        p[0] = 1.0;
        return p;
    }
    for (auto& x : p)
        x /= total;
    // Fold rounding into the largest entry so the sum is 1 within 1e-15.
    long double s = 0.0L;
    for (double x : p)
        s += x;
    *std::max_element(p.begin(), p.end()) += static_cast<double>(1.0L - s);
    return p;
}

/// Trapezoid rule on a fine uniform grid; a deliberately different
/// quadrature from the library's adaptive Gauss-Legendre.
template <class F>
double trapezoid(const F& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    long double s = 0.5L * (f(a) + f(b));
    for (int i = 1; i < panels; ++i)
        s += f(a + i * h);
    return static_cast<double>(s * h);
}

} // namespace oracle
