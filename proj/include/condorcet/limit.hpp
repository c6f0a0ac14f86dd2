#pragma once

#include "asymptotic.hpp"
#include "exact.hpp"
#include "table1.hpp"

namespace condorcet {

/// Breakdown plus, for three candidates, the table row it falls in.
[[nodiscard]] inline LimitBreakdown limit_breakdown_with_case(const Culture& c,
                                                              const LimitOptions& opts = {}) {
    LimitBreakdown b = limit_breakdown(c, opts);
    if (c.m() == 3)
        b.table_case = classify_m3(c, opts.sign_tol).case_number;
    return b;
}

/// lim_{n -> inf} P(a Condorcet winner exists), as a sum of m orthant terms.
[[nodiscard]] inline WinnerProbability limiting_probability(const Culture& c,
                                                            const LimitOptions& opts = {}) {
    const LimitBreakdown b = limit_breakdown_with_case(c, opts);
    WinnerProbability out;
    out.value = std::clamp(b.value, 0.0, 1.0);
    out.method = Method::Limit;
    WinnerDetail detail;
    detail.table_case = b.table_case;
    for (const auto& t : b.terms)
        detail.candidate_terms.push_back(t.orthant.value);
    out.detail = std::move(detail);
    return out;
}

} // namespace condorcet
