#pragma once

// Rank orders over m candidates and probability distributions ("cultures")
// over the m! orders.
//
// Canonical indexing is lexicographic over candidate sequences. For m = 3
// the canonical indices 0..5 are the orders 012, 021, 102, 120, 201, 210,
// which are the rankings C1C2C3, C1C3C2, C2C1C3, C2C3C1, C3C1C2, C3C2C1
// (p_1..p_6 in the usual three-candidate tables).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"

namespace condorcet {

using Candidate = int;

inline constexpr int kMinCandidates = 2;
inline constexpr int kMaxCandidates = 8;
inline constexpr double kProbabilitySumTolerance = 1e-12;

[[nodiscard]] inline std::size_t factorial(int m) {
    std::size_t f = 1;
    for (int i = 2; i <= m; ++i)
        f *= static_cast<std::size_t>(i);
    return f;
}

inline void require_candidate_count(int m, const char* where) {
    if (m < kMinCandidates || m > kMaxCandidates)
        throw DomainError(std::string(where) + ": m must lie in [2, 8], got " +
                          std::to_string(m));
}

/// A strict ranking of candidates 0..m-1, most preferred first.
class RankOrder {
public:
    RankOrder() = default;

    explicit RankOrder(std::vector<Candidate> candidates)
        : candidates_(std::move(candidates)) {
        const int m = static_cast<int>(candidates_.size());
        if (m < 1)
            throw DomainError("RankOrder: empty candidate sequence");
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        for (Candidate c : candidates_) {
            if (c < 0 || c >= m || seen[static_cast<std::size_t>(c)])
                throw DomainError("RankOrder: sequence is not a permutation of 0..m-1");
            seen[static_cast<std::size_t>(c)] = true;
        }
        position_.resize(static_cast<std::size_t>(m));
        for (int r = 0; r < m; ++r)
            position_[static_cast<std::size_t>(candidates_[static_cast<std::size_t>(r)])] = r;
    }

    [[nodiscard]] int size() const noexcept { return static_cast<int>(candidates_.size()); }
    [[nodiscard]] std::span<const Candidate> candidates() const noexcept { return candidates_; }
    [[nodiscard]] Candidate operator[](int rank) const { return candidates_.at(static_cast<std::size_t>(rank)); }

    /// Rank position of candidate c (0 = top).
    [[nodiscard]] int position(Candidate c) const {
        return position_.at(static_cast<std::size_t>(c));
    }

    [[nodiscard]] bool prefers(Candidate i, Candidate j) const {
        return position(i) < position(j);
    }

    friend bool operator==(const RankOrder& a, const RankOrder& b) noexcept {
        return a.candidates_ == b.candidates_;
    }

private:
    std::vector<Candidate> candidates_;
    std::vector<int> position_;
};

/// +1 / -1 coefficient of a ranking in a pairwise margin.
class PreferenceSign {
public:
    static constexpr PreferenceSign plus() noexcept { return PreferenceSign(1); }
    static constexpr PreferenceSign minus() noexcept { return PreferenceSign(-1); }

    [[nodiscard]] constexpr int value() const noexcept { return value_; }

    constexpr PreferenceSign operator-() const noexcept { return PreferenceSign(-value_); }
    friend constexpr PreferenceSign operator*(PreferenceSign a, PreferenceSign b) noexcept {
        return PreferenceSign(a.value_ * b.value_);
    }
    friend constexpr bool operator==(PreferenceSign, PreferenceSign) noexcept = default;

private:
    explicit constexpr PreferenceSign(int v) noexcept : value_(v) {}
    int value_;
};

/// All m! rank orders in lexicographic order; position in the result is the
/// canonical index every Culture uses.
[[nodiscard]] inline std::vector<RankOrder> enumerate_rank_orders(int m) {
    require_candidate_count(m, "enumerate_rank_orders");
    std::vector<Candidate> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<RankOrder> out;
    out.reserve(factorial(m));
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Shared, lazily built copy of enumerate_rank_orders(m).
[[nodiscard]] inline const std::vector<RankOrder>& cached_rank_orders(int m) {
    require_candidate_count(m, "cached_rank_orders");
    static std::array<std::once_flag, kMaxCandidates + 1> flags;
    static std::array<std::vector<RankOrder>, kMaxCandidates + 1> tables;
    const auto slot = static_cast<std::size_t>(m);
    std::call_once(flags[slot], [&] { tables[slot] = enumerate_rank_orders(m); });
    return tables[slot];
}

/// Canonical (lexicographic) index of an order, via its Lehmer code.
[[nodiscard]] inline std::size_t rank_order_index(const RankOrder& o) {
    const int m = o.size();
    std::size_t index = 0;
    for (int r = 0; r < m; ++r) {
        int smaller_later = 0;
        for (int s = r + 1; s < m; ++s)
            if (o[s] < o[r])
                ++smaller_later;
        index += static_cast<std::size_t>(smaller_later) * factorial(m - 1 - r);
    }
    return index;
}

/// Reversed ranking.
[[nodiscard]] inline RankOrder dual_order(const RankOrder& o) {
    std::vector<Candidate> rev(o.candidates().rbegin(), o.candidates().rend());
    return RankOrder(std::move(rev));
}

/// a_{l,(i,j)}: +1 when i is ranked above j in o.
[[nodiscard]] inline PreferenceSign preference_sign(const RankOrder& o,
                                                    Candidate i, Candidate j) {
    if (i == j)
        throw DomainError("preference_sign: i and j must differ");
    return o.prefers(i, j) ? PreferenceSign::plus() : PreferenceSign::minus();
}

/// a_{r,(i,j),l}: +1 when i beats both j and l, or loses to both.
[[nodiscard]] inline PreferenceSign joint_preference_sign(const RankOrder& o,
                                                          Candidate i, Candidate j,
                                                          Candidate l) {
    if (i == j || i == l || j == l)
        throw DomainError("joint_preference_sign: i, j, l must be pairwise distinct");
    const bool over_j = o.prefers(i, j);
    const bool over_l = o.prefers(i, l);
    return over_j == over_l ? PreferenceSign::plus() : PreferenceSign::minus();
}

/// Probability distribution over the m! rank orders. Immutable once built.
class Culture {
public:
    Culture(int m, std::vector<double> probs) : m_(m), probs_(std::move(probs)) {
        require_candidate_count(m, "Culture");
        const std::size_t k = factorial(m);
        if (probs_.size() != k)
            throw DomainError("Culture: expected " + std::to_string(k) +
                              " probabilities for m = " + std::to_string(m) +
                              ", got " + std::to_string(probs_.size()));
        CompensatedSum total;
        for (std::size_t i = 0; i < k; ++i) {
            const double p = probs_[i];
            if (!std::isfinite(p) || p < 0.0)
                throw DomainError("Culture: probability at index " + std::to_string(i) +
                                  " is negative or not finite");
            total.add(p);
        }
        const double deficit = 1.0 - total.value();
        if (std::fabs(deficit) > kProbabilitySumTolerance)
            throw DomainError("Culture: probabilities sum to " +
                              format_double(total.value()) + " (deficit " +
                              format_double(deficit) + ")");
        orders_ = &cached_rank_orders(m);
    }

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
    [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
    [[nodiscard]] double prob(std::size_t index) const { return probs_.at(index); }
    [[nodiscard]] std::span<const RankOrder> orders() const noexcept { return *orders_; }
    [[nodiscard]] const RankOrder& order(std::size_t index) const { return orders_->at(index); }

    /// Canonical indices with strictly positive probability.
    [[nodiscard]] std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < probs_.size(); ++i)
            if (probs_[i] > 0.0)
                s.push_back(i);
        return s;
    }

private:
    static std::string format_double(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    int m_;
    std::vector<double> probs_;
    const std::vector<RankOrder>* orders_ = nullptr;
};

[[nodiscard]] inline Culture impartial_culture(int m) {
    require_candidate_count(m, "impartial_culture");
    const std::size_t k = factorial(m);
    return Culture(m, std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

/// Mass 1/m on each cyclic rotation of (0, 1, ..., m-1).
[[nodiscard]] inline Culture cyclic_minimizer_culture(int m) {
    require_candidate_count(m, "cyclic_minimizer_culture");
    std::vector<double> probs(factorial(m), 0.0);
    std::vector<Candidate> seq(static_cast<std::size_t>(m));
    for (int shift = 0; shift < m; ++shift) {
        for (int r = 0; r < m; ++r)
            seq[static_cast<std::size_t>(r)] = (r + shift) % m;
        probs[rank_order_index(RankOrder(seq))] = 1.0 / static_cast<double>(m);
    }
    return Culture(m, std::move(probs));
}

/// True when every order and its reversal carry equal probability.
[[nodiscard]] inline bool is_dual_culture(const Culture& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::size_t d = rank_order_index(dual_order(c.order(i)));
        if (std::fabs(c.prob(i) - c.prob(d)) > kProbabilitySumTolerance)
            return false;
    }
    return true;
}

/// p_ij: probability that a voter ranks i above j.
[[nodiscard]] inline double pairwise_win_probability(const Culture& c, Candidate i,
                                                     Candidate j) {
    if (i == j)
        throw DomainError("pairwise_win_probability: i and j must differ");
    if (i < 0 || j < 0 || i >= c.m() || j >= c.m())
        throw DomainError("pairwise_win_probability: candidate out of range");
    CompensatedSum s;
    for (std::size_t r = 0; r < c.size(); ++r)
        if (c.order(r).prefers(i, j))
            s.add(c.prob(r));
    return s.value();
}

} // namespace condorcet
