#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdist/fock_core.hpp"

namespace qdist {

/// Largest modulus accepted for squeezing and phase-state parameters.
inline constexpr double kMaxModulus = 1.0 - 1e-9;
/// Default tail tolerance for truncation checks and adaptive dimensions.
inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr int kDefaultMaxDim = 512;

namespace family {
struct Fock {
    int n = 0;
};
struct Coherent {
    complex alpha;
};
struct GeneralizedCoherent {
    complex alpha;
    std::vector<double> phases;  // phi(n), radians
};
struct Cat {
    complex alpha;
    double phi = 0.0;
};
struct SqueezedVacuum {
    complex zeta;
};
struct CoherentPhase {
    complex epsilon;
};
struct Thermal {
    double nbar = 0.0;
};
}  // namespace family

/// Symbolic description of a state: family plus parameters.
struct StateSpec {
    using Params = std::variant<family::Fock, family::Coherent, family::GeneralizedCoherent, family::Cat,
                                family::SqueezedVacuum, family::CoherentPhase, family::Thermal>;
    Params params;

    bool is_pure() const { return !std::holds_alternative<family::Thermal>(params); }
    /// True for every parametrization of |0><0| (fock:0, coherent:0, squeezed:0, phase:0, thermal:0, ...).
    bool is_vacuum() const;
    std::string family_name() const;
};

/// Throws DomainError if the parameters violate the family's constraints.
void validate(const StateSpec& spec);

/// Parses the text grammar
///   fock:n | coherent:re[,im] | cat:re,im,phi | squeezed:re[,im] | phase:re[,im]
///   | thermal:nbar | gencoh:re[,im],@phasefile
/// where a phase file holds one real (radians) per line. A two-field cat spec is read as re,phi.
StateSpec parse_state_spec(std::string_view text);

/// Human-readable form (phase tables are summarized, not reproduced).
std::string to_string(const StateSpec& spec);

/// Yurke-Stoler table: phi(2k) = 0, phi(2k+1) = -pi/2.
std::vector<double> yurke_stoler_phases(int length);

// Constructors. Amplitudes are renormalized after truncation, and the global phase is fixed so that
// the first nonzero amplitude is real and positive. Each throws TruncationError if the analytic
// tail mass beyond dim exceeds kDefaultTailTolerance.
FockVector fock(int n, int dim);
FockVector coherent(complex alpha, int dim);
FockVector generalized_coherent(complex alpha, std::span<const double> phases, int dim);
FockVector cat(complex alpha, double phi, int dim);
FockVector squeezed_vacuum(complex zeta, int dim);
FockVector coherent_phase(complex epsilon, int dim);
DensityOperator thermal(double nbar, int dim);

/// Analytic photon-number mass at n >= dim.
double tail_mass(const StateSpec& spec, int dim);

/// Smallest dim whose tail mass is below tail_tol, rounded up to the next multiple of 8.
/// Throws TruncationError if that exceeds max_dim.
int adaptive_dim(const StateSpec& spec, double tail_tol = kDefaultTailTolerance, int max_dim = kDefaultMaxDim);

/// A constructed state with its truncation bookkeeping.
struct PreparedState {
    std::optional<FockVector> pure;
    DensityOperator rho;
    double discarded_mass = 0.0;
};

PreparedState prepare(const StateSpec& spec, int dim);

/// Mandel parameter <N^2>/<N> - <N> - 1. Throws DomainError when <N> vanishes.
double mandel_q(const DensityOperator& rho);
double mean_photon_number(const DensityOperator& rho);

/// Normally ordered moments M(k, l) = Tr(a^dag^k a^l rho), 0 <= k, l <= cutoff.
struct MomentTable {
    int cutoff = 0;
    Matrix m;  // (cutoff + 1) x (cutoff + 1), m(k, l)

    complex operator()(int k, int l) const { return m(k, l); }
};

/// Tr(a^dag^k a^l rho). Throws DomainError if k or l is not below rho.dim().
complex moment(const DensityOperator& rho, int k, int l);
MomentTable moment_table(const DensityOperator& rho, int cutoff);

struct Reconstruction {
    DensityOperator rho;
    double trace_deviation = 0.0;  // |Tr - 1| before renormalization
};

/// rho = sum_{k,l} M(k,l) a_{k,l} with a_{k,l} = sum_j (-1)^j |l-j><k-j| / (j! sqrt((k-j)!(l-j)!)).
/// Throws TruncationError if the raw trace deviates from one by more than 1e-3.
Reconstruction reconstruct_from_moments(const MomentTable& table, int dim);

}  // namespace qdist
