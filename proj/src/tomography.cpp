#include "qdist/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "qdist/errors.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double scale_of(double mu, double nu) {
    const double r2 = mu * mu + nu * nu;
    if (!(r2 > 1e-12)) throw DomainError("tomogram: (mu, nu) must not vanish");
    return std::sqrt(r2);
}

void validate_grid(const XGrid& g) {
    if (g.n < 3) throw DomainError("x grid needs at least 3 points");
    if (!(g.x_max > g.x_min)) throw DomainError("x grid has empty extent");
}

// Effective analytic description: coherent amplitude or Fock index.
struct AnalyticParams {
    bool fock = false;
    int n = 0;
    complex alpha{};
};

AnalyticParams analytic_params(const StateSpec& spec) {
    if (spec.is_vacuum()) return {};
    if (const auto* f = std::get_if<family::Fock>(&spec.params)) return {true, f->n, {}};
    if (const auto* c = std::get_if<family::Coherent>(&spec.params)) return {false, 0, c->alpha};
    throw UnsupportedError(fmt::format("no closed-form tomogram for {}", spec.family_name()));
}

void finish(Tomogram& t) {
    const std::vector<double> w = quad::simpson_weights(t.x_grid.n, t.x_grid.dx());
    double sum = 0.0;
    for (int i = 0; i < t.x_grid.n; ++i) sum += w[static_cast<std::size_t>(i)] * t.w(i);
    t.normalization = sum;
    t.converged = std::abs(sum - 1.0) <= kTomogramNormTolerance;
}

bool same_grid(const XGrid& a, const XGrid& b) {
    return a.n == b.n && a.x_min == b.x_min && a.x_max == b.x_max;
}

// Lagrange weights for nodes -1, 0, 1, 2 at offset t in [0, 1).
std::array<double, 4> cubic_weights(double t) {
    return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
            -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

double interpolate(const PhaseGrid& g, double q, double p) {
    const GridLayout& l = g.layout;
    const double fq = (q - l.q_min) / l.dq();
    const double fp = (p - l.p_min) / l.dp();
    const double iq = std::floor(fq);
    const double ip = std::floor(fp);
    if (iq < 1.0 || ip < 1.0 || iq > l.nq - 3.0 || ip > l.np - 3.0) return 0.0;
    const int i0 = static_cast<int>(iq) - 1;
    const int j0 = static_cast<int>(ip) - 1;
    const auto wq = cubic_weights(fq - iq);
    const auto wp = cubic_weights(fp - ip);
    double out = 0.0;
    for (int a = 0; a < 4; ++a) {
        double row = 0.0;
        for (int b = 0; b < 4; ++b) row += wp[static_cast<std::size_t>(b)] * g.values(i0 + a, j0 + b);
        out += wq[static_cast<std::size_t>(a)] * row;
    }
    return out;
}

// Divergence of two tomograms on a shared grid, without checks.
double divergence(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const std::vector<double>& w,
                  DivergenceKind kind) {
    const Eigen::Index n = a.size();
    double s = 0.0;
    switch (kind) {
        case DivergenceKind::hellinger:
            for (Eigen::Index i = 0; i < n; ++i) {
                const double d = std::sqrt(std::max(a(i), 0.0)) - std::sqrt(std::max(b(i), 0.0));
                s += w[static_cast<std::size_t>(i)] * d * d;
            }
            return std::sqrt(std::max(s, 0.0));
        case DivergenceKind::kolmogorov:
            for (Eigen::Index i = 0; i < n; ++i) s += w[static_cast<std::size_t>(i)] * std::abs(a(i) - b(i));
            return s;
        case DivergenceKind::bhattacharyya:
            for (Eigen::Index i = 0; i < n; ++i) {
                s += w[static_cast<std::size_t>(i)] * std::sqrt(std::max(a(i), 0.0) * std::max(b(i), 0.0));
            }
            return std::max(0.0, -std::log(s));
        case DivergenceKind::kullback:
            for (Eigen::Index i = 0; i < n; ++i) {
                if (a(i) < 1e-15 && b(i) < 1e-15) continue;
                const double fa = std::max(a(i), 1e-300);
                const double fb = std::max(b(i), 1e-300);
                s += w[static_cast<std::size_t>(i)] * (fa - fb) * std::log(fa / fb);
            }
            return std::max(s, 0.0);
    }
    return 0.0;
}

}  // namespace

double WeightFunction::operator()(double r) const { return 2.0 * scale * std::exp(-r * r); }

double WeightFunction::normalization(int radial_nodes) const {
    // With t = R^2, g(R) R dR = scale e^{-t} dt.
    const quad::Rule rule = quad::gauss_laguerre(radial_nodes);
    double sum = 0.0;
    for (double w : rule.weights) sum += scale * w;
    return sum;
}

DivergenceKind parse_divergence_kind(std::string_view name) {
    if (name == "hellinger") return DivergenceKind::hellinger;
    if (name == "kolmogorov") return DivergenceKind::kolmogorov;
    if (name == "bhattacharyya") return DivergenceKind::bhattacharyya;
    if (name == "kullback") return DivergenceKind::kullback;
    throw ParseError(fmt::format("unknown divergence kind '{}'", name));
}

const char* to_string(DivergenceKind kind) {
    switch (kind) {
        case DivergenceKind::hellinger: return "hellinger";
        case DivergenceKind::kolmogorov: return "kolmogorov";
        case DivergenceKind::bhattacharyya: return "bhattacharyya";
        case DivergenceKind::kullback: return "kullback";
    }
    return "?";
}

bool has_analytic_marginal(const StateSpec& spec) {
    return spec.is_vacuum() || std::holds_alternative<family::Fock>(spec.params) ||
           std::holds_alternative<family::Coherent>(spec.params);
}

XGrid x_grid_for(const StateSpec& a, const StateSpec& b, double mu, double nu, int points) {
    const double r = scale_of(mu, nu);
    const double sigma = r / std::numbers::sqrt2;
    double lo = HUGE_VAL;
    double hi = -HUGE_VAL;
    for (const StateSpec* s : {&a, &b}) {
        const AnalyticParams p = analytic_params(*s);
        const double mean = std::numbers::sqrt2 * (mu * p.alpha.real() + nu * p.alpha.imag());
        const double half = 10.0 * sigma + (p.fock ? r * std::sqrt(2.0 * p.n + 1.0) : 0.0);
        lo = std::min(lo, mean - half);
        hi = std::max(hi, mean + half);
    }
    return {lo, hi, points};
}

Tomogram marginal_analytic(const StateSpec& spec, double mu, double nu, const XGrid& grid) {
    const double r = scale_of(mu, nu);
    validate_grid(grid);
    const AnalyticParams p = analytic_params(spec);
    Tomogram t{mu, nu, grid, Eigen::VectorXd(grid.n)};
    const double mean = std::numbers::sqrt2 * (mu * p.alpha.real() + nu * p.alpha.imag());
    for (int i = 0; i < grid.n; ++i) {
        const double z = (grid.x(i) - mean) / r;
        const double w0 = std::exp(-z * z) / (kSqrtPi * r);
        if (!p.fock) {
            t.w(i) = w0;
            continue;
        }
        // h_k = H_k(z) / sqrt(2^k k!)
        double prev = 0.0;
        double cur = 1.0;
        for (int k = 0; k < p.n; ++k) {
            const double next = std::sqrt(2.0 / (k + 1)) * z * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
            prev = cur;
            cur = next;
        }
        t.w(i) = w0 * cur * cur;
    }
    finish(t);
    return t;
}

Tomogram marginal_from_wigner(const QuasiDistribution& wigner, double mu, double nu, const XGrid& grid) {
    if (wigner.s != 0) throw DomainError("marginal_from_wigner: needs a Wigner (s = 0) distribution");
    const double r = scale_of(mu, nu);
    validate_grid(grid);
    const GridLayout& l = wigner.grid.layout;
    const double ds = 0.5 * std::min(l.dq(), l.dp());
    // unit vectors across (e) and along (d) the line
    const double ex = mu / r;
    const double ey = nu / r;
    const double dxv = -ey;
    const double dyv = ex;

    Tomogram t{mu, nu, grid, Eigen::VectorXd(grid.n)};
    for (int i = 0; i < grid.n; ++i) {
        const double offset = grid.x(i) / r;
        const double cq = offset * ex;
        const double cp = offset * ey;
        // s-interval where the line stays inside the grid rectangle
        double s_lo = -HUGE_VAL;
        double s_hi = HUGE_VAL;
        auto clip = [&](double c, double d, double lo, double hi) {
            if (std::abs(d) < 1e-15) {
                if (c < lo || c > hi) s_lo = HUGE_VAL;
                return;
            }
            double a = (lo - c) / d;
            double b = (hi - c) / d;
            if (a > b) std::swap(a, b);
            s_lo = std::max(s_lo, a);
            s_hi = std::min(s_hi, b);
        };
        clip(cq, dxv, l.q_min, l.q_max);
        clip(cp, dyv, l.p_min, l.p_max);
        double sum = 0.0;
        if (s_hi > s_lo) {
            // W vanishes at the grid edge to within the mass check, so a plain sum is the trapezoid rule.
            const double start = std::ceil(s_lo / ds) * ds;
            for (double s = start; s <= s_hi; s += ds) sum += interpolate(wigner.grid, cq + s * dxv, cp + s * dyv);
        }
        t.w(i) = sum * ds / (kTwoPi * r);
    }
    finish(t);
    return t;
}

double classical_divergence(const Tomogram& a, const Tomogram& b, DivergenceKind kind) {
    if (!same_grid(a.x_grid, b.x_grid)) throw DimensionMismatch("classical_divergence: tomograms on different grids");
    return divergence(a.w, b.w, quad::simpson_weights(a.x_grid.n, a.x_grid.dx()), kind);
}

double tomographic_distance(const StateSpec& a, const StateSpec& b, DivergenceKind kind, const WeightFunction& weight,
                            int radial_nodes, int angular_nodes) {
    if (radial_nodes < 1 || angular_nodes < 1) throw DomainError("tomographic_distance: node counts must be positive");
    const double norm = weight.normalization(radial_nodes);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw DomainError(fmt::format("tomographic_distance: weight normalization {:.12g} != 1", norm));
    }
    const quad::Rule radial = quad::gauss_laguerre(radial_nodes);
    const double dtheta = kTwoPi / angular_nodes;

    if (has_analytic_marginal(a) && has_analytic_marginal(b)) {
        double total = 0.0;
        for (int k = 0; k < radial_nodes; ++k) {
            const double r = std::sqrt(radial.nodes[static_cast<std::size_t>(k)]);
            double ring = 0.0;
            for (int j = 0; j < angular_nodes; ++j) {
                const double th = j * dtheta;
                const double mu = r * std::cos(th);
                const double nu = r * std::sin(th);
                const XGrid grid = x_grid_for(a, b, mu, nu);
                ring += classical_divergence(marginal_analytic(a, mu, nu, grid), marginal_analytic(b, mu, nu, grid), kind);
            }
            total += weight.scale * radial.weights[static_cast<std::size_t>(k)] * ring * dtheta;
        }
        return total;
    }

    // Wigner route. Every divergence here is invariant under X -> R X, so the marginal at radius R equals
    // the R = 1 marginal rescaled and only the angle matters.
    const int dim = std::max(adaptive_dim(a), adaptive_dim(b));
    const GridLayout layout = GridLayout::for_dim(dim);
    const QuasiDistribution wa = wigner(prepare(a, dim).rho, layout);
    const QuasiDistribution wb = wigner(prepare(b, dim).rho, layout);
    const double half = layout.q_max;
    const XGrid grid{-half, half, kDefaultXPoints};
    double ring = 0.0;
    for (int j = 0; j < angular_nodes; ++j) {
        const double th = j * dtheta;
        ring += classical_divergence(marginal_from_wigner(wa, std::cos(th), std::sin(th), grid),
                                     marginal_from_wigner(wb, std::cos(th), std::sin(th), grid), kind);
    }
    return norm * ring * dtheta;
}

void write_csv(std::ostream& out, const Tomogram& t) {
    out << "mu,nu,X,w\n";
    for (int i = 0; i < t.x_grid.n; ++i) {
        out << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g}\n", t.mu, t.nu, t.x_grid.x(i), t.w(i));
    }
}

}  // namespace qdist
