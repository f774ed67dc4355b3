#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdist/fock_core.hpp"
#include "qdist/states.hpp"

namespace qdist {

/// Fixed positive reference operator Z used by the polarized distances.
/// Only diagonal operators in the number basis are represented.
class PolarizationOperator {
public:
    enum class Kind { identity, number, custom_diagonal };

    static PolarizationOperator identity(int dim);
    static PolarizationOperator number(int dim);
    /// Throws DomainError on a negative entry.
    static PolarizationOperator custom(std::vector<double> diag);

    Kind kind() const { return kind_; }
    int dim() const { return static_cast<int>(diag_.size()); }
    const std::vector<double>& diag() const { return diag_; }

private:
    PolarizationOperator(Kind kind, std::vector<double> diag) : kind_(kind), diag_(std::move(diag)) {}

    Kind kind_;
    std::vector<double> diag_;
};

enum class PureKind { fubini_study, minimal, wootters };

/// Squared distances slightly below zero are clamped; beyond this the report flags a warning.
inline constexpr double kClampWarning = 1e-9;

struct DistanceReport {
    std::string kind;
    double value = 0.0;
    int dim = 0;
    /// Magnitude of the negative squared value that was clamped to zero.
    double clamped = 0.0;
    bool numerical_warning = false;
};

double pure_state_distance(const FockVector& a, const FockVector& b, PureKind kind);

DistanceReport hilbert_schmidt_report(const DensityOperator& r1, const DensityOperator& r2);
double hilbert_schmidt(const DensityOperator& r1, const DensityOperator& r2);

/// Half the trace norm of r1 - r2.
double jmg_distance(const DensityOperator& r1, const DensityOperator& r2);

double bures_uhlmann(const DensityOperator& r1, const DensityOperator& r2);

/// || r1^p - r2^p ||_2 for p in (0, 1].
double modified_hs(const DensityOperator& r1, const DensityOperator& r2, double p);

/// sqrt(Tr(Z (r1 - r2)^2)).
DistanceReport polarized_report(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z);
double polarized(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z);

/// sqrt(Tr(Z (r1^{1/2} - r2^{1/2})^2)).
double polarized_sqrt(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z);

/// Energy-sensitive quasidistance: Tr(D Z D) - [Tr(D Z^{1/2} D)]^2 / Tr(D^2), D = r1 - r2.
/// Returns exactly zero when Tr(D^2) < 1e-14.
double quasidistance_DZ(const DensityOperator& r1, const DensityOperator& r2, const PolarizationOperator& z);

/// Variant with the annihilation operator: Tr(D a^dag a D) - |Tr(D a D)|^2 / Tr(D^2).
double quasidistance_Da(const DensityOperator& r1, const DensityOperator& r2);

struct MomentSeries {
    std::vector<double> partial_sums;  // squared distance through s = 0, 1, ..., s_max
    double value = 0.0;                // sqrt of the clamped final partial sum
};

/// Hilbert-Schmidt distance from normally ordered moments, summed through s = s_max.
MomentSeries hs_from_moments(const MomentTable& m1, const MomentTable& m2, int s_max);

struct HsBounds {
    std::optional<double> b0;  // sqrt(2 nbar), reference state |0> only
    double bn = 0.0;
    double bvar = 0.0;
};

/// Upper bounds on hilbert_schmidt(rho, |n><n|).
HsBounds hs_bounds(const DensityOperator& rho, int n);

/// sqrt(2 (1 - <psi|rho|psi>)), which dominates hilbert_schmidt(|psi><psi|, rho).
double puremix_bound(const FockVector& psi, const DensityOperator& rho);

}  // namespace qdist
