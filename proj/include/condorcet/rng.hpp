#pragma once

// Portable random streams. Every sampler here is written out explicitly
// (no std:: distributions) so a given seed yields the same draws on every
// platform and standard library.
//
// Generator: xoshiro256** seeded through SplitMix64. Independent streams are
// derived from (seed, stream index) by hashing both through SplitMix64.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"

namespace condorcet {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
        SplitMix64 mix(seed);
        const std::uint64_t base = mix.next();
        SplitMix64 sm(base ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
        for (auto& w : s_)
            w = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by Lemire's multiply-shift rejection.
    std::uint64_t below(std::uint64_t bound) noexcept {
        __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<__uint128_t>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
};

/// Standard normal pairs by the Box-Muller transform.
class NormalSampler {
public:
    double operator()(Xoshiro256& rng) noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Walker/Vose alias table for a categorical distribution.
class AliasTable {
public:
    explicit AliasTable(std::span<const double> weights) {
        const std::size_t k = weights.size();
        if (k == 0)
            throw DomainError("AliasTable: empty weight vector");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0))
                throw DomainError("AliasTable: negative weight");
            total += w;
        }
        if (!(total > 0.0))
            throw DomainError("AliasTable: weights sum to zero");

        prob_.assign(k, 0.0);
        alias_.assign(k, 0);
        std::vector<double> scaled(k);
        std::vector<std::size_t> small, large;
        for (std::size_t i = 0; i < k; ++i) {
            scaled[i] = weights[i] * static_cast<double>(k) / total;
            (scaled[i] < 1.0 ? small : large).push_back(i);
        }
        while (!small.empty() && !large.empty()) {
            const std::size_t s = small.back();
            small.pop_back();
            const std::size_t l = large.back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if (scaled[l] < 1.0) {
                large.pop_back();
                small.push_back(l);
            }
        }
        for (std::size_t i : large)
            prob_[i] = 1.0;
        for (std::size_t i : small)
            prob_[i] = 1.0;
    }

    [[nodiscard]] std::size_t size() const noexcept { return prob_.size(); }

    std::size_t operator()(Xoshiro256& rng) const noexcept {
        const std::size_t column = rng.below(prob_.size());
        return rng.uniform() < prob_[column] ? column : alias_[column];
    }

private:
    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
};

/// Exact Binomial(n, p) draw by inversion that walks outward from the mode,
/// alternating below/above. Expected work is O(sqrt(n p (1 - p))).
inline std::int64_t sample_binomial(Xoshiro256& rng, std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0)
        return 0;
    if (p >= 1.0)
        return n;
    const double q = 1.0 - p;
    const auto mode = static_cast<std::int64_t>(
        std::floor(static_cast<double>(n + 1) * p));
    const std::int64_t start = mode > n ? n : mode;
    const double log_pmf_mode =
        std::lgamma(static_cast<double>(n) + 1.0) -
        std::lgamma(static_cast<double>(start) + 1.0) -
        std::lgamma(static_cast<double>(n - start) + 1.0) +
        static_cast<double>(start) * std::log(p) +
        static_cast<double>(n - start) * std::log(q);
    const double f_mode = std::exp(log_pmf_mode);
    const double ratio = p / q;

    for (;;) {
        double u = rng.uniform() - f_mode;
        if (u < 0.0)
            return start;
        std::int64_t lo = start, hi = start;
        double f_lo = f_mode, f_hi = f_mode;
        bool moved = true;
        while (moved) {
            moved = false;
            if (lo > 0) {
                // pmf(k-1) = pmf(k) * k / ((n-k+1) * ratio)
                f_lo *= static_cast<double>(lo) /
                        (static_cast<double>(n - lo + 1) * ratio);
                --lo;
                u -= f_lo;
                if (u < 0.0)
                    return lo;
                moved = true;
            }
            if (hi < n) {
                f_hi *= static_cast<double>(n - hi) * ratio /
                        static_cast<double>(hi + 1);
                ++hi;
                u -= f_hi;
                if (u < 0.0)
                    return hi;
                moved = true;
            }
            const double lo_next = lo > 0 ? f_lo : 0.0;
            const double hi_next = hi < n ? f_hi : 0.0;
            if (lo_next < 1e-300 && hi_next < 1e-300)
                break;
        }
        // Rounding left a sliver of mass unassigned; redraw.
    }
}

} // namespace condorcet
