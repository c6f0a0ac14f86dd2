#pragma once

// Finite-n results: Condorcet winner of a concrete profile, the exact
// probability of a winner by multinomial enumeration, pairwise tie
// probabilities, and the minimum winner probability over all cultures.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "culture.hpp"
#include "errors.hpp"
#include "numerics.hpp"

namespace condorcet {

enum class WinnerMode { Strong, Weak };

/// Minimum pairwise margin (votes for minus votes against) a winner needs.
[[nodiscard]] constexpr int required_margin(WinnerMode mode) noexcept {
    return mode == WinnerMode::Strong ? 1 : 0;
}

enum class Method { Exact, MonteCarlo, Limit };

[[nodiscard]] inline const char* method_name(Method m) noexcept {
    switch (m) {
    case Method::Exact: return "exact";
    case Method::MonteCarlo: return "montecarlo";
    case Method::Limit: return "limit";
    }
    return "?";
}

struct WinnerDetail {
    std::optional<int> table_case;       // three-candidate classification row
    std::vector<double> candidate_terms; // per-candidate contribution
};

/// A winner probability with the method that produced it. stderr is set
/// exactly when method == MonteCarlo.
struct WinnerProbability {
    double value = 0.0;
    Method method = Method::Exact;
    std::optional<double> stderr_value;
    std::optional<WinnerDetail> detail;
};

/// Vote counts N_1..N_K per canonical rank order.
class VoterProfile {
public:
    VoterProfile(int m, std::vector<std::int64_t> counts) : m_(m), counts_(std::move(counts)) {
        require_candidate_count(m, "VoterProfile");
        if (counts_.size() != factorial(m))
            throw DomainError("VoterProfile: expected " + std::to_string(factorial(m)) +
                              " counts, got " + std::to_string(counts_.size()));
        for (auto c : counts_) {
            if (c < 0)
                throw DomainError("VoterProfile: negative count");
            n_ += c;
        }
    }

    /// Profile from explicit ballots.
    static VoterProfile from_ballots(int m, std::span<const RankOrder> ballots) {
        std::vector<std::int64_t> counts(factorial(m), 0);
        for (const auto& b : ballots) {
            if (b.size() != m)
                throw DomainError("VoterProfile: ballot has wrong candidate count");
            ++counts[rank_order_index(b)];
        }
        return VoterProfile(m, std::move(counts));
    }

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] std::span<const std::int64_t> counts() const noexcept { return counts_; }

    /// Votes preferring i to j minus votes preferring j to i.
    [[nodiscard]] std::int64_t margin(Candidate i, Candidate j) const {
        if (i == j)
            throw DomainError("VoterProfile::margin: i and j must differ");
        const auto& orders = cached_rank_orders(m_);
        std::int64_t s = 0;
        for (std::size_t l = 0; l < counts_.size(); ++l)
            s += orders[l].prefers(i, j) ? counts_[l] : -counts_[l];
        return s;
    }

private:
    int m_;
    std::vector<std::int64_t> counts_;
    std::int64_t n_ = 0;
};

struct WinnerOutcome {
    std::optional<Candidate> winner;   // lowest-index qualifier
    std::vector<Candidate> qualifiers; // every candidate meeting the margin test
};

[[nodiscard]] inline WinnerOutcome condorcet_winner(const VoterProfile& profile, WinnerMode mode) {
    const int m = profile.m();
    const int need = required_margin(mode);
    WinnerOutcome out;
    for (Candidate i = 0; i < m; ++i) {
        bool beats_all = true;
        for (Candidate j = 0; j < m && beats_all; ++j)
            if (j != i && profile.margin(i, j) < need)
                beats_all = false;
        if (beats_all)
            out.qualifiers.push_back(i);
    }
    if (!out.qualifiers.empty())
        out.winner = out.qualifiers.front();
    return out;
}

namespace detail {

// Per-order +1/-1 coefficients over the pairs (i < j), flattened.
struct PairTable {
    int m = 0;
    int pairs = 0;
    std::vector<int> pair_index; // m*m -> pair id for i < j
    std::vector<std::int8_t> coeff; // order-major: coeff[o * pairs + pair]

    PairTable(int m_, std::span<const std::size_t> orders) : m(m_) {
        pairs = m * (m - 1) / 2;
        pair_index.assign(static_cast<std::size_t>(m * m), -1);
        int id = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                pair_index[static_cast<std::size_t>(i * m + j)] = id++;
        const auto& all = cached_rank_orders(m);
        coeff.resize(orders.size() * static_cast<std::size_t>(pairs));
        for (std::size_t o = 0; o < orders.size(); ++o) {
            const RankOrder& r = all[orders[o]];
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    coeff[o * static_cast<std::size_t>(pairs) +
                          static_cast<std::size_t>(pair_index[static_cast<std::size_t>(i * m + j)])] =
                        r.prefers(i, j) ? 1 : -1;
        }
    }

    // margins indexed by pair id hold margin(i, j) for i < j.
    [[nodiscard]] bool has_winner(std::span<const std::int64_t> margins, int need) const {
        for (int i = 0; i < m; ++i) {
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                if (j == i)
                    continue;
                const std::int64_t mg =
                    i < j ? margins[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(i * m + j)])]
                          : -margins[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(j * m + i)])];
                ok = mg >= need;
            }
            if (ok)
                return true;
        }
        return false;
    }
};

} // namespace detail

struct ExactOptions {
    double budget = 5e7;  // maximum number of profiles to enumerate
    unsigned threads = 1; // workers; the result does not depend on this
};

struct ExactEnumeration {
    double winner_mass = 0.0;
    double total_mass = 0.0; // sanity: 1 up to rounding
    double profiles = 0.0;   // number of compositions visited
};

/// Number of compositions of n into k non-negative parts, in floating point.
[[nodiscard]] inline double composition_count(std::int64_t n, std::size_t k) {
    if (k == 0)
        return n == 0 ? 1.0 : 0.0;
    return std::round(std::exp(log_binomial(n + static_cast<std::int64_t>(k) - 1,
                                            static_cast<std::int64_t>(k) - 1)));
}

/// Enumerates every profile over the culture's support (zero-probability
/// orders are pruned) and sums multinomial masses. Partitioned on the count
/// of the first support order; partitions merge in fixed order so the result
/// is bit-identical for any worker count.
[[nodiscard]] inline ExactEnumeration exact_enumeration(const Culture& c, std::int64_t n,
                                                        WinnerMode mode,
                                                        const ExactOptions& opts = {}) {
    if (n < 1)
        throw DomainError("exact_winner_probability: n must be >= 1");
    const std::vector<std::size_t> support = c.support();
    const std::size_t s = support.size();
    const double count = composition_count(n, s);
    if (count > opts.budget) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "exact_winner_probability: %.0f profiles exceed the enumeration budget of %.0f",
                      count, opts.budget);
        throw CapacityError(buf);
    }

    const detail::PairTable table(c.m(), support);
    const int need = required_margin(mode);
    const auto pairs = static_cast<std::size_t>(table.pairs);

    // log(p^k / k!) per support order.
    std::vector<std::vector<double>> log_term(s, std::vector<double>(static_cast<std::size_t>(n) + 1));
    for (std::size_t t = 0; t < s; ++t) {
        const double lp = std::log(c.prob(support[t]));
        for (std::int64_t k = 0; k <= n; ++k)
            log_term[t][static_cast<std::size_t>(k)] =
                static_cast<double>(k) * lp - std::lgamma(static_cast<double>(k) + 1.0);
    }
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);

    struct Partial {
        CompensatedSum winner, total;
        double profiles = 0.0;
    };

    // Depth-first walk over the remaining parts for a fixed first count.
    auto run_partition = [&](std::int64_t first, Partial& acc) {
        std::vector<std::int64_t> margins(pairs, 0);
        for (std::size_t q = 0; q < pairs; ++q)
            margins[q] = table.coeff[q] * first;
        auto walk = [&](auto&& self, std::size_t level, std::int64_t remaining,
                        double log_w) -> void {
            if (level + 1 == s) {
                for (std::size_t q = 0; q < pairs; ++q)
                    margins[q] += table.coeff[level * pairs + q] * remaining;
                const double w = std::exp(log_n_fact + log_w +
                                          log_term[level][static_cast<std::size_t>(remaining)]);
                acc.total.add(w);
                if (table.has_winner(margins, need))
                    acc.winner.add(w);
                acc.profiles += 1.0;
                for (std::size_t q = 0; q < pairs; ++q)
                    margins[q] -= table.coeff[level * pairs + q] * remaining;
                return;
            }
            for (std::int64_t k = 0; k <= remaining; ++k) {
                for (std::size_t q = 0; q < pairs; ++q)
                    margins[q] += table.coeff[level * pairs + q] * k;
                self(self, level + 1, remaining - k,
                     log_w + log_term[level][static_cast<std::size_t>(k)]);
                for (std::size_t q = 0; q < pairs; ++q)
                    margins[q] -= table.coeff[level * pairs + q] * k;
            }
        };
        if (s == 1) {
            const double w = std::exp(log_n_fact + log_term[0][static_cast<std::size_t>(n)]);
            acc.total.add(w);
            if (table.has_winner(margins, need))
                acc.winner.add(w);
            acc.profiles += 1.0;
            return;
        }
        walk(walk, 1, n - first, log_term[0][static_cast<std::size_t>(first)]);
    };

    const std::int64_t partitions = s == 1 ? 1 : n + 1;
    std::vector<Partial> partial(static_cast<std::size_t>(partitions));
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(partitions)));
    if (workers == 1) {
        for (std::int64_t f = 0; f < partitions; ++f)
            run_partition(s == 1 ? n : f, partial[static_cast<std::size_t>(f)]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t f = w; f < partitions; f += workers)
                    run_partition(f, partial[static_cast<std::size_t>(f)]);
            });
        for (auto& th : pool)
            th.join();
    }

    CompensatedSum winner, total;
    ExactEnumeration out;
    for (const auto& p : partial) {
        winner.add(p.winner);
        total.add(p.total);
        out.profiles += p.profiles;
    }
    out.winner_mass = winner.value();
    out.total_mass = total.value();
    return out;
}

/// Exact P(a Condorcet winner exists) for n independent voters.
[[nodiscard]] inline WinnerProbability exact_winner_probability(const Culture& c, std::int64_t n,
                                                                WinnerMode mode,
                                                                const ExactOptions& opts = {}) {
    const ExactEnumeration e = exact_enumeration(c, n, mode, opts);
    WinnerProbability out;
    out.value = std::clamp(e.winner_mass, 0.0, 1.0);
    out.method = Method::Exact;
    return out;
}

/// Probability that i and j tie among n voters when P(i over j) = p.
[[nodiscard]] inline double tie_probability(std::int64_t n, double p) {
    if (n < 1)
        throw DomainError("tie_probability: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("tie_probability: p must lie in [0, 1]");
    if (n % 2 != 0)
        return 0.0;
    const double q = p * (1.0 - p);
    if (q == 0.0)
        return 0.0;
    const std::int64_t h = n / 2;
    return std::exp(log_binomial(n, h) + static_cast<double>(h) * std::log(q));
}

/// Largest vote count that is not a strict majority of n.
[[nodiscard]] constexpr std::int64_t majority_threshold(std::int64_t n) noexcept {
    return n % 2 != 0 ? (n - 1) / 2 : n / 2;
}

/// m * (1 - B(k; n, 1/m)): the smallest winner probability any culture
/// attains, reached by the cyclic minimizer.
[[nodiscard]] inline double minimum_winner_probability(int m, std::int64_t n) {
    if (m < 2)
        throw DomainError("minimum_winner_probability: m must be >= 2");
    if (n < 1)
        throw DomainError("minimum_winner_probability: n must be >= 1");
    return static_cast<double>(m) *
           binomial_upper_tail(majority_threshold(n), n, 1.0 / static_cast<double>(m));
}

struct MinimumTableRow {
    std::int64_t n;
    int m;
    double probability;
};

/// Grid of minimum_winner_probability, n-major then m.
[[nodiscard]] inline std::vector<MinimumTableRow> minimum_table(std::span<const int> ms,
                                                                std::span<const std::int64_t> ns) {
    std::vector<MinimumTableRow> rows;
    rows.reserve(ms.size() * ns.size());
    for (auto n : ns)
        for (int m : ms)
            rows.push_back({n, m, minimum_winner_probability(m, n)});
    return rows;
}

/// CSV `n,m,probability,probability_full`: four decimals, then 17 digits.
[[nodiscard]] inline std::string minimum_table_csv(std::span<const MinimumTableRow> rows) {
    std::string out = "n,m,probability,probability_full\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%d,%.4f,%.17g\n", static_cast<long long>(r.n), r.m,
                      r.probability, r.probability);
        out += buf;
    }
    return out;
}

} // namespace condorcet
