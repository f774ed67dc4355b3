#include "qdist/distances.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include <fmt/format.h>

#include "qdist/errors.hpp"

namespace qdist {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) throw DimensionMismatch(fmt::format("{}: dimension {} vs {}", what, a, b));
}

DistanceReport from_squared(std::string kind, double squared, int dim) {
    DistanceReport r{std::move(kind), 0.0, dim, 0.0, false};
    if (squared < 0.0) {
        r.clamped = -squared;
        r.numerical_warning = -squared > kClampWarning;
        squared = 0.0;
    }
    r.value = std::sqrt(squared);
    return r;
}

Eigen::VectorXcd z_diagonal(const PolarizationOperator& z, int dim) {
    require_same_dim(z.dim(), dim, "polarization operator");
    Eigen::VectorXcd d(dim);
    for (int i = 0; i < dim; ++i) d(i) = z.diag()[static_cast<std::size_t>(i)];
    return d;
}

// Tr(diag(z) X) for Hermitian X
double weighted_trace(const Eigen::VectorXcd& z, const Matrix& x) {
    return (z.array() * x.diagonal().array()).sum().real();
}

}  // namespace

PolarizationOperator PolarizationOperator::identity(int dim) {
    return {Kind::identity, std::vector<double>(static_cast<std::size_t>(dim), 1.0)};
}

PolarizationOperator PolarizationOperator::number(int dim) {
    std::vector<double> d(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) d[static_cast<std::size_t>(n)] = n;
    return {Kind::number, std::move(d)};
}

PolarizationOperator PolarizationOperator::custom(std::vector<double> diag) {
    for (double v : diag) {
        if (!(v >= 0.0)) throw DomainError("polarization operator must be positive semidefinite");
    }
    return {Kind::custom_diagonal, std::move(diag)};
}

double pure_state_distance(const FockVector& a, const FockVector& b, PureKind kind) {
    const double f = std::min(1.0, std::abs(overlap(a, b)));
    switch (kind) {
        case PureKind::fubini_study:
            return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - f * f));
        case PureKind::minimal:
            return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - f));
        case PureKind::wootters:
            return std::acos(f);
    }
    return 0.0;
}

DistanceReport hilbert_schmidt_report(const DensityOperator& r1, const DensityOperator& r2) {
    require_same_dim(r1.dim(), r2.dim(), "hilbert_schmidt");
    const double sq = purity(r1) + purity(r2) - 2.0 * trace_product(r1, r2);
    return from_squared("hs", sq, r1.dim());
}

double hilbert_schmidt(const DensityOperator& r1, const DensityOperator& r2) {
    return hilbert_schmidt_report(r1, r2).value;
}

double jmg_distance(const DensityOperator& r1, const DensityOperator& r2) {
    require_same_dim(r1.dim(), r2.dim(), "jmg_distance");
    return 0.5 * trace_norm(r1.mat() - r2.mat());
}

double bures_uhlmann(const DensityOperator& r1, const DensityOperator& r2) {
    require_same_dim(r1.dim(), r2.dim(), "bures_uhlmann");
    // Tr sqrt(s1 r2 s1) is the trace norm of s1 s2; swapping the arguments only takes the adjoint.
    const Matrix prod = hermitian_sqrt(r1) * hermitian_sqrt(r2);
    const double fidelity = Eigen::JacobiSVD<Matrix>(prod).singularValues().sum();
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::min(fidelity, 1.0)));
}

double modified_hs(const DensityOperator& r1, const DensityOperator& r2, double p) {
    require_same_dim(r1.dim(), r2.dim(), "modified_hs");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("modified_hs: p must lie in (0, 1]");
    if (p == 1.0) return hilbert_schmidt(r1, r2);
    const Matrix d = hermitian_power(r1.mat(), p) - hermitian_power(r2.mat(), p);
    return d.norm();
}

DistanceReport polarized_report(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z) {
    require_same_dim(r1.dim(), r2.dim(), "polarized");
    const Eigen::VectorXcd zd = z_diagonal(z, r1.dim());
    const Matrix d = r1.mat() - r2.mat();
    // Tr(Z D^2) = sum_i z_i sum_k |D_ik|^2
    const double sq = (zd.real().array() * d.rowwise().squaredNorm().array()).sum();
    DistanceReport r = from_squared("dn", sq, r1.dim());
    if (r.clamped > 1e-10) throw NumericalError(fmt::format("polarized: squared value {} below -1e-10", sq));
    return r;
}

double polarized(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z) {
    return polarized_report(r1, r2, z).value;
}

double polarized_sqrt(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z) {
    require_same_dim(r1.dim(), r2.dim(), "polarized_sqrt");
    const Eigen::VectorXcd zd = z_diagonal(z, r1.dim());
    const Matrix d = hermitian_sqrt(r1) - hermitian_sqrt(r2);
    const double sq = (zd.real().array() * d.rowwise().squaredNorm().array()).sum();
    return from_squared("dn-sqrt", sq, r1.dim()).value;
}

double quasidistance_DZ(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z) {
    require_same_dim(r1.dim(), r2.dim(), "quasidistance_DZ");
    const Matrix d = r1.mat() - r2.mat();
    const Matrix d2 = d * d;
    const double norm2 = d2.trace().real();
    if (norm2 < 1e-14) return 0.0;
    const Eigen::VectorXcd zd = z_diagonal(z, r1.dim());
    const Eigen::VectorXcd zroot = zd.real().cwiseSqrt().cast<complex>();
    // Tr(D Z D) = Tr(Z D^2)
    const double tz = weighted_trace(zd, d2);
    const double tzroot = weighted_trace(zroot, d2);
    const double sq = tz - tzroot * tzroot / norm2;
    return from_squared("DZ", sq, r1.dim()).value;
}

double quasidistance_Da(const DensityOperator& r1, const DensityOperator& r2) {
    require_same_dim(r1.dim(), r2.dim(), "quasidistance_Da");
    const int dim = r1.dim();
    const Matrix d = r1.mat() - r2.mat();
    const Matrix d2 = d * d;
    const double norm2 = d2.trace().real();
    if (norm2 < 1e-14) return 0.0;
    const Matrix a = annihilation(dim);
    const double tn = (number_operator(dim) * d2).trace().real();
    const complex ta = (a * d2).trace();  // Tr(D a D) = Tr(a D^2)
    const double sq = tn - std::norm(ta) / norm2;
    return from_squared("Da", sq, dim).value;
}

MomentSeries hs_from_moments(const MomentTable& m1, const MomentTable& m2, int s_max) {
    if (s_max < 0) throw DomainError("hs_from_moments: s_max must be >= 0");
    if (m1.cutoff < s_max || m2.cutoff < s_max) {
        throw DomainError(fmt::format("hs_from_moments: tables (cutoff {}, {}) do not cover s_max = {}", m1.cutoff,
                                      m2.cutoff, s_max));
    }
    const Matrix dm = m1.m.topLeftCorner(s_max + 1, s_max + 1) - m2.m.topLeftCorner(s_max + 1, s_max + 1);
    MomentSeries out;
    double total = 0.0;
    for (int s = 0; s <= s_max; ++s) {
        complex term = 0.0;
        for (int k = 0; k <= s; ++k) {
            for (int l = 0; l <= s; ++l) {
                const double log_c = std::lgamma(s + 1.0) - std::lgamma(k + 1.0) - std::lgamma(s - k + 1.0) -
                                     std::lgamma(l + 1.0) - std::lgamma(s - l + 1.0);
                const double c = ((s + k + l) % 2 == 0 ? 1.0 : -1.0) * std::exp(log_c);
                term += c * dm(k, l) * dm(s - k, s - l);
            }
        }
        total += term.real();
        out.partial_sums.push_back(total);
    }
    out.value = std::sqrt(std::max(0.0, total));
    return out;
}

HsBounds hs_bounds(const DensityOperator& rho, int n) {
    if (n < 0 || n >= rho.dim()) throw DomainError(fmt::format("hs_bounds: n = {} outside dim {}", n, rho.dim()));
    double mean = 0.0;
    double second = 0.0;
    for (int k = 0; k < rho.dim(); ++k) {
        const double p = rho(k, k).real();
        mean += k * p;
        second += static_cast<double>(k) * k * p;
    }
    const double variance = std::max(0.0, second - mean * mean);
    HsBounds b;
    if (n == 0) b.b0 = std::sqrt(2.0 * std::max(0.0, mean));
    const double rho00 = rho(0, 0).real();
    const double rhonn = rho(n, n).real();
    b.bn = std::sqrt(2.0) * std::sqrt(std::max(0.0, rho00 + mean - n * rhonn));
    b.bvar = std::sqrt(2.0) * std::sqrt(variance + (n - mean) * (n - mean));
    return b;
}

double puremix_bound(const FockVector& psi, const DensityOperator& rho) {
    const double f = expectation(psi, rho.mat()).real();
    return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - f));
}

}  // namespace qdist
