#pragma once

// Seeded Monte Carlo estimate of P(a Condorcet winner exists).
//
// Each trial draws a full voter profile from the multinomial. Up to
// kBinomialSplitVoters voters are drawn one ballot at a time from an alias
// table; above that the multinomial is split into successive conditional
// binomials. Trials are divided across workers, worker w using stream
// Xoshiro256(seed, w); hit counts are integers so the merge is exact.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "culture.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "rng.hpp"

namespace condorcet {

inline constexpr std::int64_t kBinomialSplitVoters = 10000;

struct McConfig {
    std::int64_t trials = 1000000;
    std::uint64_t seed = 20240101;
    WinnerMode mode = WinnerMode::Strong;
    unsigned threads = 1; // the estimate is deterministic for fixed (seed, threads)
};

namespace detail {

inline std::int64_t mc_hits(const Culture& c, std::int64_t n, const McConfig& cfg,
                            std::int64_t trials, std::uint64_t stream) {
    const std::vector<std::size_t> support = c.support();
    const std::size_t s = support.size();
    const PairTable table(c.m(), support);
    const auto pairs = static_cast<std::size_t>(table.pairs);
    const int need = required_margin(cfg.mode);

    std::vector<double> weights(s);
    for (std::size_t t = 0; t < s; ++t)
        weights[t] = c.prob(support[t]);
    const AliasTable alias(weights);

    // Conditional probabilities p_t / (p_t + ... + p_{s-1}) for binomial splitting.
    std::vector<double> conditional(s, 1.0);
    {
        double tail = 0.0;
        for (std::size_t t = s; t-- > 0;) {
            tail += weights[t];
            conditional[t] = tail > 0.0 ? std::min(1.0, weights[t] / tail) : 0.0;
        }
    }

    Xoshiro256 rng(cfg.seed, stream);
    std::vector<std::int64_t> counts(s);
    std::vector<std::int64_t> margins(pairs);
    std::int64_t hits = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        std::fill(counts.begin(), counts.end(), 0);
        if (s == 1) {
            counts[0] = n;
        } else if (n <= kBinomialSplitVoters) {
            for (std::int64_t v = 0; v < n; ++v)
                ++counts[alias(rng)];
        } else {
            std::int64_t remaining = n;
            for (std::size_t t = 0; t + 1 < s && remaining > 0; ++t) {
                counts[t] = sample_binomial(rng, remaining, conditional[t]);
                remaining -= counts[t];
            }
            counts[s - 1] += remaining;
        }
        std::fill(margins.begin(), margins.end(), 0);
        for (std::size_t t = 0; t < s; ++t) {
            if (counts[t] == 0)
                continue;
            for (std::size_t q = 0; q < pairs; ++q)
                margins[q] += table.coeff[t * pairs + q] * counts[t];
        }
        if (table.has_winner(margins, need))
            ++hits;
    }
    return hits;
}

} // namespace detail

[[nodiscard]] inline WinnerProbability mc_winner_probability(const Culture& c, std::int64_t n,
                                                             const McConfig& cfg) {
    if (n < 1)
        throw DomainError("mc_winner_probability: n must be >= 1");
    if (cfg.trials < 1)
        throw DomainError("mc_winner_probability: trials must be >= 1");

    const unsigned workers = std::max(
        1u, static_cast<unsigned>(std::min<std::int64_t>(cfg.threads, cfg.trials)));
    std::vector<std::int64_t> hits(workers, 0);
    const std::int64_t base = cfg.trials / workers;
    const std::int64_t extra = cfg.trials % workers;
    auto share = [&](unsigned w) { return base + (static_cast<std::int64_t>(w) < extra ? 1 : 0); };

    if (workers == 1) {
        hits[0] = detail::mc_hits(c, n, cfg, cfg.trials, 0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { hits[w] = detail::mc_hits(c, n, cfg, share(w), w); });
        for (auto& th : pool)
            th.join();
    }

    std::int64_t total = 0;
    for (auto h : hits)
        total += h;
    const double v = static_cast<double>(total) / static_cast<double>(cfg.trials);
    WinnerProbability out;
    out.value = v;
    out.method = Method::MonteCarlo;
    out.stderr_value = std::sqrt(v * (1.0 - v) / static_cast<double>(cfg.trials));
    return out;
}

struct SweepRow {
    std::int64_t n;
    WinnerProbability estimate;
};

/// One estimate per voter count, each run from the configured seed.
[[nodiscard]] inline std::vector<SweepRow> mc_convergence_sweep(const Culture& c,
                                                                std::span<const std::int64_t> ns,
                                                                const McConfig& cfg) {
    if (ns.empty())
        throw DomainError("mc_convergence_sweep: ns must be non-empty");
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1])
            throw DomainError("mc_convergence_sweep: ns must be strictly ascending");
    std::vector<SweepRow> rows;
    rows.reserve(ns.size());
    for (auto n : ns)
        rows.push_back({n, mc_winner_probability(c, n, cfg)});
    return rows;
}

/// CSV `n,estimate,stderr,trials,seed`.
[[nodiscard]] inline std::string sweep_csv(std::span<const SweepRow> rows, const McConfig& cfg) {
    std::string out = "n,estimate,stderr,trials,seed\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%lld,%llu\n",
                      static_cast<long long>(r.n), r.estimate.value,
                      r.estimate.stderr_value.value_or(0.0),
                      static_cast<long long>(cfg.trials),
                      static_cast<unsigned long long>(cfg.seed));
        out += buf;
    }
    return out;
}

} // namespace condorcet
