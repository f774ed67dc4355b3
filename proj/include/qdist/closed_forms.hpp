#pragma once

#include <complex>
#include <map>
#include <set>
#include <string>

// Analytic distances between members of the tabulated state families. Nothing here
// touches the matrix machinery: each entry is evaluated from its formula alone so that
// it can serve as an independent check on the numeric path.

namespace qdist::closed {

struct ClosedFormResult {
    std::map<std::string, double> values;
    /// Keys of `values` that are asymptotic approximations rather than exact results.
    std::set<std::string> approximations;

    double at(const std::string& key) const { return values.at(key); }
    bool has(const std::string& key) const { return values.count(key) != 0; }
};

/// hs, dN (number-polarized), Da (annihilation quasidistance).
ClosedFormResult coherent_pair(std::complex<double> alpha, std::complex<double> beta);

/// hs, dN between |alpha> and |m>.
ClosedFormResult coherent_fock(std::complex<double> alpha, int m);

/// dN and the quasidistance DN between |m> and |n>; hs = sqrt(2) for m != n.
ClosedFormResult fock_pair(int m, int n);

/// hs and dN for squeezed vacua; with equal phases also hs_samephase and dN_samephase
/// from the rapidity forms (zeta = tanh(tau) e^{i phi}).
ClosedFormResult squeezed_pair(std::complex<double> zeta1, std::complex<double> zeta2);

/// Cat states |alpha; phi>:
///   d_to_coherent   (phi1 vs |alpha>)
///   d_to_vacuum     (phi1 vs |0>, from |<0|alpha;phi>|^2)
///   d_to_vacuum_printed (the textbook expression, exact only at cos(phi1) = 0)
///   d_between       (phi1 vs phi2)
///   dN_to_vacuum, dN_between
/// plus large-|alpha| approximations d_between_large_alpha, dN_between_large_alpha.
ClosedFormResult cat_distances(std::complex<double> alpha, double phi1, double phi2);

/// hs and dN between coherent phase states.
ClosedFormResult phase_pair(std::complex<double> eps1, std::complex<double> eps2);

/// Thermal pair: hs, bu, dN, dN_sqrt, dN_min_pseudo (pure phase states with the same mean
/// photon numbers and aligned phases). Approximations for large nbar:
///   bu_large_nbar, dN_sqrt_sq_large_nbar, dN_min_sq_large_nbar,
///   dN_sqrt_close, dN_min_close (|nbar1 - nbar2| << nbar).
ClosedFormResult thermal_pair(double nbar1, double nbar2);

/// Same-variance Gaussian marginals of two coherent states, weight g(R) = 2 exp(-R^2):
///   hellinger     angular integral of sqrt(2 - 2 exp(-|a-b|^2 cos^2(t) / 2)) (numerical in t)
///   bhattacharyya pi |a-b|^2 / 2
///   kullback      4 pi |a-b|^2
/// and the limits hellinger_small = 4|a-b|, hellinger_large = 2 pi sqrt(2).
ClosedFormResult tomographic_coherent(std::complex<double> alpha, std::complex<double> beta);

}  // namespace qdist::closed
