#pragma once

#include <iosfwd>
#include <string_view>

#include <Eigen/Dense>

#include "qdist/phase_space.hpp"
#include "qdist/states.hpp"

namespace qdist {

/// Uniform grid of quadrature values X.
struct XGrid {
    double x_min = -1.0;
    double x_max = 1.0;
    int n = 1025;

    double dx() const { return (x_max - x_min) / (n - 1); }
    double x(int i) const { return x_min + i * dx(); }
};

/// Marginal density w_{mu nu}(X) of the quadrature mu q + nu p.
struct Tomogram {
    double mu = 1.0;
    double nu = 0.0;
    XGrid x_grid;
    Eigen::VectorXd w;
    double normalization = 0.0;  // Simpson integral of w over the grid
    bool converged = false;      // normalization within kTomogramNormTolerance
};

inline constexpr double kTomogramNormTolerance = 1e-6;
inline constexpr int kDefaultXPoints = 1025;

/// g(R) = 2 scale e^{-R^2}. Only scale = 1 satisfies int_0^inf g(R) R dR = 1.
struct WeightFunction {
    enum class Kind { gaussian_radial };
    Kind kind = Kind::gaussian_radial;
    double scale = 1.0;

    double operator()(double r) const;
    /// int_0^inf g(R) R dR evaluated with the radial rule.
    double normalization(int radial_nodes) const;
};

enum class DivergenceKind { hellinger, kolmogorov, bhattacharyya, kullback };

DivergenceKind parse_divergence_kind(std::string_view name);
const char* to_string(DivergenceKind kind);

/// True for the families with closed-form marginals: Fock, coherent and any vacuum parametrization.
bool has_analytic_marginal(const StateSpec& spec);

/// Grid covering both states' marginals: mean +- 10 sigma, widened by R sqrt(2n+1) for Fock states.
/// Requires analytic marginals.
XGrid x_grid_for(const StateSpec& a, const StateSpec& b, double mu, double nu, int points = kDefaultXPoints);

/// Closed-form marginal of a Fock or coherent state. Throws DomainError for mu = nu = 0 and
/// UnsupportedError for other families.
Tomogram marginal_analytic(const StateSpec& spec, double mu, double nu, const XGrid& grid);

/// w(X) = (1 / 2 pi R) int W ds along the line mu q + nu p = X, with R = sqrt(mu^2 + nu^2).
/// W is interpolated bicubically between grid nodes and taken as zero outside the grid.
Tomogram marginal_from_wigner(const QuasiDistribution& wigner, double mu, double nu, const XGrid& grid);

/// Hellinger sqrt(int (sqrt a - sqrt b)^2), Kolmogorov int |a - b|, Bhattacharyya -ln int sqrt(ab),
/// symmetric Kullback int (a - b) ln(a / b). Throws DimensionMismatch if the grids differ.
double classical_divergence(const Tomogram& a, const Tomogram& b, DivergenceKind kind);

/// D = int R dR int dtheta g(R) d(w_a, w_b) at (mu, nu) = R (cos theta, sin theta), with
/// Gauss-Laguerre nodes in t = R^2 and the trapezoid rule in theta. States without analytic
/// marginals go through the Wigner function. Throws DomainError if the weight is not normalized.
double tomographic_distance(const StateSpec& a, const StateSpec& b, DivergenceKind kind,
                            const WeightFunction& weight = {}, int radial_nodes = 48, int angular_nodes = 64);

/// CSV rows "mu,nu,X,w" with a header.
void write_csv(std::ostream& out, const Tomogram& tomogram);

}  // namespace qdist
