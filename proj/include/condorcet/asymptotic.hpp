#pragma once

// Large-electorate limit of the Condorcet winner probability for an
// arbitrary culture.
//
// Write X(i,j) = +1 when a voter ranks i over j and -1 otherwise. Per voter
//   lambda_ij = E X(i,j),   Var X(i,j) = 1 - lambda_ij^2,
// and the correlation between X(i,j) and X(i,l) is R^(i)_jl. As n grows the
// standardized margins of candidate i against the other m-1 candidates
// become jointly normal with correlation R_i, while the centering term
// sqrt(n) * lambda_ij sends each threshold to -inf, 0 or +inf. The limit is
//
//   P(inf, m) = sum_i L(delta_i1, ..., delta_im; R_i).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "culture.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "numerics.hpp"
#include "orthant.hpp"

namespace condorcet {

inline constexpr double kDefaultSignTolerance = 1e-12;

/// lambda_ij for all ordered pairs; antisymmetric with zero diagonal.
class LambdaMatrix {
public:
    LambdaMatrix(int m, std::vector<double> values) : m_(m), values_(std::move(values)) {
        if (m < 2 || values_.size() != static_cast<std::size_t>(m * m))
            throw DomainError("LambdaMatrix: need m >= 2 and m*m values");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const double v = (*this)(i, j);
                if (!(v >= -1.0 && v <= 1.0))
                    throw DomainError("LambdaMatrix: value outside [-1, 1]");
                if (v != -(*this)(j, i))
                    throw DomainError("LambdaMatrix: values must be antisymmetric");
            }
    }

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] double operator()(Candidate i, Candidate j) const {
        return values_[static_cast<std::size_t>(i * m_ + j)];
    }

private:
    int m_;
    std::vector<double> values_;
};

[[nodiscard]] inline LambdaMatrix lambda_matrix(const Culture& c) {
    const int m = c.m();
    std::vector<double> v(static_cast<std::size_t>(m * m), 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            CompensatedSum s;
            for (std::size_t r = 0; r < c.size(); ++r)
                s.add(preference_sign(c.order(r), i, j).value() * c.prob(r));
            const double lam = std::clamp(s.value(), -1.0, 1.0);
            v[static_cast<std::size_t>(i * m + j)] = lam;
            v[static_cast<std::size_t>(j * m + i)] = -lam;
        }
    return {m, std::move(v)};
}

/// delta_ij for every ordered pair. Note the inversion: lambda_ij > 0 (i is
/// expected to beat j) gives the lower limit -inf, i.e. a sure win.
class DeltaMatrix {
public:
    DeltaMatrix(const LambdaMatrix& lambda, double tol) : m_(lambda.m()) {
        if (!(tol >= 0.0))
            throw DomainError("classify_deltas: tol must be >= 0");
        signs_.assign(static_cast<std::size_t>(m_ * m_), DeltaSign::Zero);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) {
                if (i == j)
                    continue;
                const double l = lambda(i, j);
                signs_[static_cast<std::size_t>(i * m_ + j)] =
                    l > tol ? DeltaSign::NegInf : (l < -tol ? DeltaSign::PosInf : DeltaSign::Zero);
            }
    }

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] DeltaSign operator()(Candidate i, Candidate j) const {
        if (i == j)
            throw DomainError("DeltaMatrix: i and j must differ");
        return signs_[static_cast<std::size_t>(i * m_ + j)];
    }

    /// delta_ij for j != i, ascending j.
    [[nodiscard]] std::vector<DeltaSign> row(Candidate i) const {
        std::vector<DeltaSign> out;
        for (int j = 0; j < m_; ++j)
            if (j != i)
                out.push_back((*this)(i, j));
        return out;
    }

private:
    int m_;
    std::vector<DeltaSign> signs_;
};

[[nodiscard]] inline DeltaMatrix classify_deltas(const LambdaMatrix& lambda,
                                                 double tol = kDefaultSignTolerance) {
    return {lambda, tol};
}

/// Sign of lambda under tolerance: +1, 0 or -1.
[[nodiscard]] inline int lambda_sign(double lambda, double tol = kDefaultSignTolerance) {
    return lambda > tol ? 1 : (lambda < -tol ? -1 : 0);
}

[[nodiscard]] inline bool degenerate_variance(double lambda, double tol = kDefaultSignTolerance) {
    return 1.0 - std::fabs(lambda) <= tol;
}

/// R^(i)_jl = (E[X(i,j) X(i,l)] - lambda_ij lambda_il) / sqrt((1-lambda_ij^2)(1-lambda_il^2)).
[[nodiscard]] inline double correlation_entry(const Culture& c, const LambdaMatrix& lambda,
                                              Candidate i, Candidate j, Candidate l) {
    const double lij = lambda(i, j);
    const double lil = lambda(i, l);
    if (degenerate_variance(lij) || degenerate_variance(lil))
        throw DegenerateVarianceError("correlation_matrix: variance 1 - lambda^2 vanishes for candidate " +
                                      std::to_string(i));
    CompensatedSum s;
    for (std::size_t r = 0; r < c.size(); ++r)
        s.add(joint_preference_sign(c.order(r), i, j, l).value() * c.prob(r));
    const double rho = (s.value() - lij * lil) / std::sqrt((1.0 - lij * lij) * (1.0 - lil * lil));
    return std::clamp(rho, -1.0, 1.0);
}

namespace detail {

// R_i over j != i. When `decouple` is set, rows of degenerate pairs are
// replaced by identity rows instead of throwing; such coordinates only ever
// carry a +/-inf threshold, so they never reach a marginal.
inline CorrelationMatrix build_correlation(const Culture& c, const LambdaMatrix& lambda, Candidate i,
                                           bool decouple) {
    const int m = c.m();
    std::vector<int> others;
    for (int j = 0; j < m; ++j)
        if (j != i)
            others.push_back(j);
    const int d = m - 1;
    std::vector<double> e(static_cast<std::size_t>(d * d), 0.0);
    for (int a = 0; a < d; ++a) {
        e[static_cast<std::size_t>(a * d + a)] = 1.0;
        for (int b = a + 1; b < d; ++b) {
            const int j = others[static_cast<std::size_t>(a)];
            const int l = others[static_cast<std::size_t>(b)];
            double v = 0.0;
            if (!decouple || (!degenerate_variance(lambda(i, j)) && !degenerate_variance(lambda(i, l))))
                v = correlation_entry(c, lambda, i, j, l);
            e[static_cast<std::size_t>(a * d + b)] = v;
            e[static_cast<std::size_t>(b * d + a)] = v;
        }
    }
    return {d, std::move(e)};
}

} // namespace detail

/// R_i, rows and columns indexed by j != i in ascending order.
[[nodiscard]] inline CorrelationMatrix correlation_matrix(const Culture& c, Candidate i) {
    if (i < 0 || i >= c.m())
        throw DomainError("correlation_matrix: candidate out of range");
    return detail::build_correlation(c, lambda_matrix(c), i, false);
}

struct LimitOptions {
    double sign_tol = kDefaultSignTolerance;
    OrthantOptions orthant;
};

struct LimitTerm {
    Candidate candidate = 0;
    std::vector<DeltaSign> deltas;     // against j != candidate, ascending
    std::vector<Candidate> integrated; // opponents with a zero threshold
    std::vector<double> correlation;   // marginal matrix over `integrated`, row-major
    OrthantResult orthant;
};

struct LimitBreakdown {
    double value = 0.0;
    double stderr_value = 0.0; // from Monte Carlo orthant terms, if any
    std::vector<LimitTerm> terms;
    std::optional<int> table_case; // filled for m = 3
};

/// Per-candidate evaluation of the limit. Coordinates with a degenerate
/// variance always carry an infinite threshold, so no correlation involving
/// them is ever formed.
[[nodiscard]] inline LimitBreakdown limit_breakdown(const Culture& c, const LimitOptions& opts = {}) {
    const LambdaMatrix lambda = lambda_matrix(c);
    const DeltaMatrix delta = classify_deltas(lambda, opts.sign_tol);
    const int m = c.m();
    LimitBreakdown out;
    CompensatedSum total;
    double var = 0.0;
    for (Candidate i = 0; i < m; ++i) {
        LimitTerm term;
        term.candidate = i;
        term.deltas = delta.row(i);
        bool impossible = false;
        for (auto s : term.deltas)
            impossible = impossible || s == DeltaSign::PosInf;
        if (impossible) {
            term.orthant = {0.0, 0.0, OrthantMethod::Trivial, 0};
        } else {
            const CorrelationMatrix R = detail::build_correlation(c, lambda, i, true);
            std::vector<int> keep;
            int pos = 0;
            for (int j = 0; j < m; ++j) {
                if (j == i)
                    continue;
                if (delta(i, j) == DeltaSign::Zero) {
                    term.integrated.push_back(j);
                    keep.push_back(pos);
                }
                ++pos;
            }
            const CorrelationMatrix sub = R.submatrix(keep);
            term.correlation.assign(sub.entries().begin(), sub.entries().end());
            term.orthant = orthant_probability(OrthantArgs(term.deltas, R), opts.orthant);
        }
        total.add(term.orthant.value);
        var += term.orthant.stderr_value * term.orthant.stderr_value;
        out.terms.push_back(std::move(term));
    }
    out.value = total.value();
    out.stderr_value = std::sqrt(var);
    return out;
}

[[nodiscard]] inline nlohmann::json limit_breakdown_json(const LimitBreakdown& b) {
    nlohmann::json j;
    j["value"] = b.value;
    if (b.stderr_value > 0.0)
        j["stderr"] = b.stderr_value;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : b.terms) {
        nlohmann::json jt;
        jt["candidate"] = t.candidate;
        nlohmann::json ds = nlohmann::json::array();
        for (auto d : t.deltas)
            ds.push_back(delta_name(d));
        jt["deltas"] = ds;
        jt["integrated"] = t.integrated;
        const auto d = t.integrated.size();
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < d; ++r) {
            std::vector<double> row(t.correlation.begin() + static_cast<std::ptrdiff_t>(r * d),
                                    t.correlation.begin() + static_cast<std::ptrdiff_t>((r + 1) * d));
            rows.push_back(row);
        }
        jt["correlation"] = rows;
        jt["L"] = t.orthant.value;
        jt["method"] = orthant_method_name(t.orthant.method);
        if (t.orthant.stderr_value > 0.0)
            jt["stderr"] = t.orthant.stderr_value;
        terms.push_back(jt);
    }
    j["terms"] = terms;
    j["case"] = b.table_case ? nlohmann::json(*b.table_case) : nlohmann::json(nullptr);
    return j;
}

} // namespace condorcet
