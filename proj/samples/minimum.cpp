// The cyclic culture attains the smallest possible winner probability;
// compare its exact enumeration with the binomial-tail formula.

#include <cstdio>

#include <condorcet/condorcet.hpp>

int main() {
    using namespace condorcet;
    for (int m : {3, 4}) {
        const Culture cyclic = cyclic_minimizer_culture(m);
        std::printf("m = %d\n", m);
        for (std::int64_t n = 1; n <= 12; ++n) {
            const double exact = exact_winner_probability(cyclic, n, WinnerMode::Strong).value;
            std::printf("  n = %2lld  exact %.6f  formula %.6f\n", static_cast<long long>(n), exact,
                        minimum_winner_probability(m, n));
        }
    }
}
