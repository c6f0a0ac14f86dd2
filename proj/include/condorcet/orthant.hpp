#pragma once

// Multivariate normal orthant probabilities
//
//   L(h_1, ..., h_d; R) = P(Z_1 >= h_1, ..., Z_d >= h_d),  Z ~ N(0, R),
//
// for thresholds h restricted to {-inf, 0, +inf}, which is all the
// large-electorate limit ever needs.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "numerics.hpp"
#include "rng.hpp"

namespace condorcet {

/// Limiting integration bound for one pairwise comparison.
enum class DeltaSign { NegInf, Zero, PosInf };

[[nodiscard]] inline const char* delta_name(DeltaSign d) noexcept {
    switch (d) {
    case DeltaSign::NegInf: return "-inf";
    case DeltaSign::Zero: return "0";
    case DeltaSign::PosInf: return "+inf";
    }
    return "?";
}

inline constexpr double kPsdTolerance = 1e-9;

/// Symmetric, unit-diagonal, positive semidefinite matrix (row-major).
class CorrelationMatrix {
public:
    CorrelationMatrix() = default;

    CorrelationMatrix(int dim, std::vector<double> entries) : dim_(dim), entries_(std::move(entries)) {
        if (dim < 0)
            throw DomainError("CorrelationMatrix: negative dimension");
        if (entries_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
            throw DomainError("CorrelationMatrix: entry count does not match dimension");
        for (int i = 0; i < dim; ++i) {
            if ((*this)(i, i) != 1.0)
                throw MatrixError("CorrelationMatrix: diagonal entries must be exactly 1");
            for (int j = 0; j < dim; ++j) {
                const double v = (*this)(i, j);
                if (!(v >= -1.0 && v <= 1.0))
                    throw MatrixError("CorrelationMatrix: entry outside [-1, 1]");
                if (v != (*this)(j, i))
                    throw MatrixError("CorrelationMatrix: matrix is not symmetric");
            }
        }
        if (dim > 0 && min_eigenvalue() < -kPsdTolerance)
            throw MatrixError("CorrelationMatrix: matrix is not positive semidefinite");
    }

    static CorrelationMatrix identity(int dim) {
        std::vector<double> e(static_cast<std::size_t>(dim * dim), 0.0);
        for (int i = 0; i < dim; ++i)
            e[static_cast<std::size_t>(i * dim + i)] = 1.0;
        return {dim, std::move(e)};
    }

    static CorrelationMatrix equicorrelated(int dim, double rho) {
        std::vector<double> e(static_cast<std::size_t>(dim * dim), rho);
        for (int i = 0; i < dim; ++i)
            e[static_cast<std::size_t>(i * dim + i)] = 1.0;
        return {dim, std::move(e)};
    }

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i * dim_ + j)];
    }
    [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }

    [[nodiscard]] Eigen::MatrixXd to_eigen() const {
        Eigen::MatrixXd m(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                m(i, j) = (*this)(i, j);
        return m;
    }

    [[nodiscard]] double min_eigenvalue() const {
        if (dim_ == 0)
            return 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    /// Principal submatrix on the given (ascending) indices.
    [[nodiscard]] CorrelationMatrix submatrix(std::span<const int> keep) const {
        const int d = static_cast<int>(keep.size());
        std::vector<double> e(static_cast<std::size_t>(d * d));
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                e[static_cast<std::size_t>(a * d + b)] = (*this)(keep[static_cast<std::size_t>(a)],
                                                                keep[static_cast<std::size_t>(b)]);
        return {d, std::move(e)};
    }

    /// Common off-diagonal value when all off-diagonals agree within tol.
    [[nodiscard]] std::optional<double> common_correlation(double tol = 1e-12) const {
        if (dim_ < 2)
            return std::nullopt;
        const double rho = (*this)(0, 1);
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                if (std::fabs((*this)(i, j) - rho) > tol)
                    return std::nullopt;
        return rho;
    }

private:
    int dim_ = 0;
    std::vector<double> entries_;
};

struct OrthantArgs {
    std::vector<DeltaSign> deltas;
    CorrelationMatrix R;

    OrthantArgs(std::vector<DeltaSign> d, CorrelationMatrix r) : deltas(std::move(d)), R(std::move(r)) {
        if (static_cast<int>(deltas.size()) != R.dim())
            throw DomainError("OrthantArgs: deltas length must equal the matrix dimension");
    }
};

enum class OrthantMethod { Trivial, ClosedForm, Sampford, MonteCarlo };

[[nodiscard]] inline const char* orthant_method_name(OrthantMethod m) noexcept {
    switch (m) {
    case OrthantMethod::Trivial: return "trivial";
    case OrthantMethod::ClosedForm: return "closed-form";
    case OrthantMethod::Sampford: return "sampford";
    case OrthantMethod::MonteCarlo: return "montecarlo";
    }
    return "?";
}

struct OrthantResult {
    double value = 0.0;
    double stderr_value = 0.0; // nonzero only for MonteCarlo
    OrthantMethod method = OrthantMethod::Trivial;
    int reduced_dim = 0;       // number of zero thresholds actually integrated
};

struct McEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

/// Monte Carlo estimate of L(h; R) for thresholds h in {-inf, 0, +inf}.
/// An empty `deltas` means all thresholds are 0. The Cholesky factor is
/// retried with diagonal jitter 1e-12, 1e-11, 1e-10 before giving up.
[[nodiscard]] inline McEstimate orthant_mc(const CorrelationMatrix& R, std::int64_t samples,
                                           std::uint64_t seed,
                                           std::span<const DeltaSign> deltas = {}) {
    if (samples < 1)
        throw DomainError("orthant_mc: samples must be >= 1");
    const int d = R.dim();
    if (!deltas.empty() && static_cast<int>(deltas.size()) != d)
        throw DomainError("orthant_mc: deltas length must equal the matrix dimension");

    Eigen::MatrixXd lower;
    bool factored = false;
    for (double jitter : {0.0, 1e-12, 1e-11, 1e-10}) {
        Eigen::MatrixXd a = R.to_eigen();
        a.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() == Eigen::Success) {
            lower = llt.matrixL();
            factored = true;
            break;
        }
    }
    if (!factored)
        throw MatrixError("orthant_mc: correlation matrix is not positive semidefinite");

    std::vector<DeltaSign> h(deltas.begin(), deltas.end());
    if (h.empty())
        h.assign(static_cast<std::size_t>(d), DeltaSign::Zero);

    Xoshiro256 rng(seed);
    NormalSampler normal;
    std::vector<double> u(static_cast<std::size_t>(d));
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        for (auto& x : u)
            x = normal(rng);
        bool inside = true;
        for (int i = 0; i < d; ++i) {
            double z = 0.0;
            for (int k = 0; k <= i; ++k)
                z += lower(i, k) * u[static_cast<std::size_t>(k)];
            const DeltaSign hi = h[static_cast<std::size_t>(i)];
            if (hi == DeltaSign::PosInf || (hi == DeltaSign::Zero && z < 0.0))
                inside = false;
        }
        if (inside)
            ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

/// (1/sqrt(pi)) * integral of exp(-t^2) * Phi(a t)^d over the real line,
/// evaluated on [-12, 12] (the neglected tails are below 1e-60).
[[nodiscard]] inline double sampford_integral(int d, double a, double tol = 1e-14) {
    if (d < 0)
        throw DomainError("sampford_integral: d must be >= 0");
    const auto f = [d, a](double t) {
        return std::exp(-t * t) * std::pow(std_normal_cdf(a * t), d);
    };
    const double s = integrate(f, -12.0, 0.0, tol) + integrate(f, 0.0, 12.0, tol);
    return s / std::sqrt(std::numbers::pi);
}

/// Equicorrelated all-zero orthant probability L_d(rho) for rho in [0, 1),
/// through the single-integral representation with a = sqrt(2 rho / (1 - rho)).
[[nodiscard]] inline double sampford_orthant(int d, double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw DomainError("sampford_orthant: rho must lie in [0, 1)");
    return sampford_integral(d, std::sqrt(2.0 * rho / (1.0 - rho)));
}

/// Bivariate all-zero orthant: 1/4 + arcsin(rho) / (2 pi).
[[nodiscard]] inline double orthant2(double rho) {
    return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
}

/// Trivariate all-zero orthant: (1/8)[1 + (2/pi)(asin r12 + asin r13 + asin r23)].
[[nodiscard]] inline double orthant3(double r12, double r13, double r23) {
    return 0.125 * (1.0 + (2.0 / std::numbers::pi) *
                              (std::asin(r12) + std::asin(r13) + std::asin(r23)));
}

struct OrthantOptions {
    std::int64_t mc_samples = 10000000;
    std::uint64_t mc_seed = 0x5eed;
    double equicorrelation_tol = 1e-12;
};

/// L(deltas; R). A +inf threshold makes the event impossible; -inf
/// thresholds are dropped and the marginal of the remaining coordinates is
/// used. What remains is an all-zero orthant of dimension d:
///   d <= 3          closed form
///   d >= 4, equicorrelated with rho >= 0   single integral
///   otherwise       orthant_mc, stderr reported
[[nodiscard]] inline OrthantResult orthant_probability(const OrthantArgs& args,
                                                       const OrthantOptions& opts = {}) {
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(args.deltas.size()); ++i) {
        switch (args.deltas[static_cast<std::size_t>(i)]) {
        case DeltaSign::PosInf: return {0.0, 0.0, OrthantMethod::Trivial, 0};
        case DeltaSign::Zero: keep.push_back(i); break;
        case DeltaSign::NegInf: break;
        }
    }
    const int d = static_cast<int>(keep.size());
    if (d == 0)
        return {1.0, 0.0, OrthantMethod::Trivial, 0};
    if (d == 1)
        return {0.5, 0.0, OrthantMethod::ClosedForm, 1};
    const CorrelationMatrix sub = args.R.submatrix(keep);
    if (d == 2)
        return {orthant2(sub(0, 1)), 0.0, OrthantMethod::ClosedForm, 2};
    if (d == 3)
        return {orthant3(sub(0, 1), sub(0, 2), sub(1, 2)), 0.0, OrthantMethod::ClosedForm, 3};
    if (const auto rho = sub.common_correlation(opts.equicorrelation_tol); rho && *rho >= 0.0)
        return {sampford_orthant(d, *rho), 0.0, OrthantMethod::Sampford, d};
    const McEstimate est = orthant_mc(sub, opts.mc_samples, opts.mc_seed);
    return {est.value, est.stderr_value, OrthantMethod::MonteCarlo, d};
}

} // namespace condorcet
