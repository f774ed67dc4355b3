#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "qdist/fock_core.hpp"
#include "qdist/states.hpp"

namespace qdist {

/// Uniform rectangular grid in (q, p). The complex amplitude is alpha = (q + i p) / sqrt(2).
struct GridLayout {
    double q_min = -1.0;
    double q_max = 1.0;
    double p_min = -1.0;
    double p_max = 1.0;
    int nq = 257;
    int np = 257;

    static GridLayout square(double half_width, int points);
    /// Square grid over +-(sqrt(2 dim) + 4).
    static GridLayout for_dim(int dim, int points = 257);

    double dq() const { return (q_max - q_min) / (nq - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
    double q(int i) const { return q_min + i * dq(); }
    double p(int j) const { return p_min + j * dp(); }

    /// Throws DomainError unless the grid has at least 16 points per axis and positive extent.
    void validate() const;
};

struct PhaseGrid {
    GridLayout layout;
    Eigen::MatrixXd values;  // nq x np, values(i, j) at (q_i, p_j)
};

/// Cahill-Glauber s-ordered distribution sampled on a grid: s = 0 Wigner, s = -1 Husimi Q,
/// s = +1 Glauber-Sudarshan P.
struct QuasiDistribution {
    int s = 0;
    PhaseGrid grid;
};

/// Normalized harmonic-oscillator eigenfunctions psi_0..psi_{count-1} at x, by upward recurrence
/// with rescaling so that high orders neither overflow nor lose the Gaussian factor.
Eigen::VectorXd hermite_functions(int count, double x);

/// W(q, p) = int du e^{ipu} <q - u/2| rho |q + u/2>, normalized so that int W dq dp / (2 pi) = 1.
/// Throws DomainError if the grid captures too little of the state (mass off by more than 1e-3).
QuasiDistribution wigner(const DensityOperator& rho, const GridLayout& layout);

/// Q(alpha) = <alpha| rho |alpha>.
QuasiDistribution husimi_q(const DensityOperator& rho, const GridLayout& layout);

/// P(alpha) = exp(-|alpha|^2 / nbar) / nbar of a thermal state. nbar = 0 (singular P) is unsupported.
QuasiDistribution p_function_thermal(double nbar, const GridLayout& layout);

/// Integral of a grid function against d^2 alpha / pi = dq dp / (2 pi), composite Simpson.
double phase_space_integral(const PhaseGrid& grid);

enum class PhaseSpaceForm { wigner, qp, pp };

struct PhaseSpaceOptions {
    int dim = 0;          // 0: adaptive
    int points = 257;     // per axis
};

/// Hilbert-Schmidt distance from phase-space integrals. The qp and pp forms need regular
/// P-functions and are restricted to thermal pairs.
double hs_from_phase_space(const StateSpec& a, const StateSpec& b, PhaseSpaceForm form,
                           const PhaseSpaceOptions& options = {});

/// CSV rows "q,p,value" with a header.
void write_csv(std::ostream& out, const PhaseGrid& grid);

}  // namespace qdist
