// Finite-n probabilities approaching the large-electorate limit for the
// impartial culture on three candidates, plus the per-candidate terms of the
// limit for a skewed culture.

#include <cstdio>
#include <vector>

#include <condorcet/condorcet.hpp>

int main() {
    using namespace condorcet;

    const Culture ic = impartial_culture(3);
    const double limit = limiting_probability(ic).value;
    std::printf("impartial culture, m = 3, limit %.6f\n", limit);
    for (std::int64_t n : {3, 7, 15, 31}) {
        const auto p = exact_winner_probability(ic, n, WinnerMode::Strong);
        std::printf("  n = %3lld  exact %.6f\n", static_cast<long long>(n), p.value);
    }

    McConfig cfg;
    cfg.trials = 200000;
    cfg.seed = 7;
    const std::vector<std::int64_t> ns = {101, 1001};
    for (const auto& row : mc_convergence_sweep(ic, ns, cfg))
        std::printf("  n = %4lld  mc    %.4f +- %.4f\n", static_cast<long long>(row.n), row.estimate.value,
                    *row.estimate.stderr_value);

    // p_1..p_6 over 012, 021, 102, 120, 201, 210
    const Culture skewed(3, {1.0 / 6, 1.0 / 6, 0.4, 0.0, 1.0 / 6, 0.1});
    const LimitBreakdown b = limit_breakdown_with_case(skewed);
    std::printf("\nskewed culture: table row %d, limit %.6f\n", b.table_case.value_or(0), b.value);
    for (const auto& t : b.terms)
        std::printf("  candidate %d contributes %.6f\n", t.candidate, t.orthant.value);

    std::printf("\nimpartial culture limit by m\n");
    for (int m = 3; m <= 12; ++m)
        std::printf("  m = %2d  %.6f  (bound %.4f)\n", m, ic_limit_sampford(m), may_bound(m));
}
