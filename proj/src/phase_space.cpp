#include "qdist/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "qdist/errors.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double simpson_2d(const GridLayout& g, const Eigen::MatrixXd& f) {
    const Eigen::VectorXd wq = to_eigen(quad::simpson_weights(g.nq, g.dq()));
    const Eigen::VectorXd wp = to_eigen(quad::simpson_weights(g.np, g.dp()));
    return wq.dot(f * wp);
}

bool is_diagonal(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j && m(i, j) != complex{}) return false;
        }
    }
    return true;
}

int dim_for(const StateSpec& spec, const PhaseSpaceOptions& options) {
    return options.dim > 0 ? options.dim : adaptive_dim(spec);
}

double thermal_nbar(const StateSpec& spec, const char* form) {
    if (const auto* t = std::get_if<family::Thermal>(&spec.params)) return t->nbar;
    throw UnsupportedError(fmt::format("{} form needs a regular P-function; only thermal states are supported, got {}",
                                       form, spec.family_name()));
}

}  // namespace

GridLayout GridLayout::square(double half_width, int points) {
    GridLayout g{-half_width, half_width, -half_width, half_width, points, points};
    g.validate();
    return g;
}

GridLayout GridLayout::for_dim(int dim, int points) {
    return square(std::sqrt(2.0 * dim) + 4.0, points);
}

void GridLayout::validate() const {
    if (nq < 16 || np < 16) throw DomainError("phase grid needs at least 16 points per axis");
    if (!(q_max > q_min) || !(p_max > p_min)) throw DomainError("phase grid has empty extent");
}

Eigen::VectorXd hermite_functions(int count, double x) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(count);
    if (count == 0) return out;
    // psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}, carried as value * exp(log_scale).
    double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
    double prev = 0.0;
    double cur = 1.0;
    out(0) = std::exp(log_scale);
    for (int n = 0; n + 1 < count; ++n) {
        const double next = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
        prev = cur;
        cur = next;
        const double mag = std::abs(cur);
        if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
            const double shift = std::log(mag);
            cur /= mag;
            prev /= mag;
            log_scale += shift;
        }
        out(n + 1) = cur * std::exp(log_scale);
    }
    return out;
}

QuasiDistribution wigner(const DensityOperator& rho, const GridLayout& layout) {
    layout.validate();
    const int dim = rho.dim();
    const int nq = layout.nq;
    const int np = layout.np;
    const double dq = layout.dq();

    // Position samples at half the q spacing so that q +- u/2 lands on samples for u = j dq.
    const int nx = 2 * nq - 1;
    Eigen::MatrixXd phi(dim, nx);
    for (int k = 0; k < nx; ++k) phi.col(k) = hermite_functions(dim, layout.q_min + 0.5 * k * dq);
    // kernel(a, b) = <x_a| rho |x_b>
    const Matrix kernel = phi.transpose().cast<complex>() * rho.mat() * phi.cast<complex>();

    // cos/sin(p_j u_k) for u_k = k dq
    Eigen::MatrixXd cos_t(np, nx);
    Eigen::MatrixXd sin_t(np, nx);
    for (int j = 0; j < np; ++j) {
        for (int k = 0; k < nx; ++k) {
            const double arg = layout.p(j) * k * dq;
            cos_t(j, k) = std::cos(arg);
            sin_t(j, k) = std::sin(arg);
        }
    }

    // The u-integral is a trapezoid sum; with u spacing dq the aliases sit at p +- 2 pi / dq,
    // far outside the support of any state the grid can hold.
    QuasiDistribution w{0, {layout, Eigen::MatrixXd(nq, np)}};
    Eigen::VectorXd re(nx);
    Eigen::VectorXd im(nx);
    for (int i = 0; i < nq; ++i) {
        const int centre = 2 * i;
        const int reach = std::min(centre, nx - 1 - centre);
        re.setZero();
        im.setZero();
        for (int k = 1; k <= reach; ++k) {
            const complex f = kernel(centre - k, centre + k);
            re(k) = f.real();
            im(k) = f.imag();
        }
        const double f0 = kernel(centre, centre).real();
        for (int j = 0; j < np; ++j) {
            const double s = cos_t.row(j).head(reach + 1).dot(re.head(reach + 1)) -
                             sin_t.row(j).head(reach + 1).dot(im.head(reach + 1));
            w.grid.values(i, j) = dq * (f0 + 2.0 * s);
        }
    }

    const double mass = phase_space_integral(w.grid);
    if (std::abs(mass - 1.0) > 1e-3) {
        throw DomainError(fmt::format("wigner: grid captures mass {:.6f}; enlarge the grid", mass));
    }
    return w;
}

QuasiDistribution husimi_q(const DensityOperator& rho, const GridLayout& layout) {
    layout.validate();
    const int dim = rho.dim();
    const bool diagonal = is_diagonal(rho.mat());
    const Eigen::VectorXd diag = rho.mat().diagonal().real();
    QuasiDistribution out{-1, {layout, Eigen::MatrixXd(layout.nq, layout.np)}};
    Vector c(dim);
    for (int i = 0; i < layout.nq; ++i) {
        for (int j = 0; j < layout.np; ++j) {
            const complex alpha = complex(layout.q(i), layout.p(j)) / std::numbers::sqrt2;
            c(0) = std::exp(-0.5 * std::norm(alpha));
            for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
            double q = 0.0;
            if (diagonal) {
                q = (diag.array() * c.cwiseAbs2().array()).sum();
            } else {
                q = c.dot(rho.mat() * c).real();
            }
            out.grid.values(i, j) = q;
        }
    }
    return out;
}

QuasiDistribution p_function_thermal(double nbar, const GridLayout& layout) {
    layout.validate();
    if (!(nbar > 0.0)) throw UnsupportedError("p_function_thermal: P is singular for nbar = 0");
    QuasiDistribution out{1, {layout, Eigen::MatrixXd(layout.nq, layout.np)}};
    for (int i = 0; i < layout.nq; ++i) {
        for (int j = 0; j < layout.np; ++j) {
            const double a2 = 0.5 * (layout.q(i) * layout.q(i) + layout.p(j) * layout.p(j));
            out.grid.values(i, j) = std::exp(-a2 / nbar) / nbar;
        }
    }
    const double norm = phase_space_integral(out.grid);
    if (std::abs(norm - 1.0) > 1e-4) {
        throw DomainError(fmt::format("p_function_thermal: grid captures {:.6f} of P; enlarge the grid", norm));
    }
    return out;
}

double phase_space_integral(const PhaseGrid& grid) { return simpson_2d(grid.layout, grid.values) / kTwoPi; }

double hs_from_phase_space(const StateSpec& a, const StateSpec& b, PhaseSpaceForm form,
                           const PhaseSpaceOptions& options) {
    const int dim = std::max(dim_for(a, options), dim_for(b, options));
    const GridLayout layout = GridLayout::for_dim(dim, options.points);

    double squared = 0.0;
    switch (form) {
        case PhaseSpaceForm::wigner: {
            const auto wa = wigner(prepare(a, dim).rho, layout);
            const auto wb = wigner(prepare(b, dim).rho, layout);
            const Eigen::MatrixXd diff = wa.grid.values - wb.grid.values;
            squared = simpson_2d(layout, diff.cwiseAbs2()) / kTwoPi;
            break;
        }
        case PhaseSpaceForm::qp: {
            const double na = thermal_nbar(a, "qp");
            const double nb = thermal_nbar(b, "qp");
            const auto qa = husimi_q(prepare(a, dim).rho, layout);
            const auto qb = husimi_q(prepare(b, dim).rho, layout);
            const auto pa = p_function_thermal(na, layout);
            const auto pb = p_function_thermal(nb, layout);
            const Eigen::MatrixXd prod =
                (qa.grid.values - qb.grid.values).cwiseProduct(pa.grid.values - pb.grid.values);
            squared = simpson_2d(layout, prod) / kTwoPi;
            break;
        }
        case PhaseSpaceForm::pp: {
            const double na = thermal_nbar(a, "pp");
            const double nb = thermal_nbar(b, "pp");
            const Eigen::MatrixXd dp =
                p_function_thermal(na, layout).grid.values - p_function_thermal(nb, layout).grid.values;
            // e^{-|alpha - beta|^2} = e^{-(q-q')^2/2} e^{-(p-p')^2/2}: convolve one axis at a time.
            const std::vector<double> wq = quad::simpson_weights(layout.nq, layout.dq());
            const std::vector<double> wp = quad::simpson_weights(layout.np, layout.dp());
            Eigen::MatrixXd kq(layout.nq, layout.nq);
            for (int i = 0; i < layout.nq; ++i) {
                for (int k = 0; k < layout.nq; ++k) {
                    const double d = layout.q(i) - layout.q(k);
                    kq(i, k) = std::exp(-0.5 * d * d) * wq[static_cast<std::size_t>(k)];
                }
            }
            Eigen::MatrixXd kp(layout.np, layout.np);
            for (int j = 0; j < layout.np; ++j) {
                for (int k = 0; k < layout.np; ++k) {
                    const double d = layout.p(j) - layout.p(k);
                    kp(j, k) = std::exp(-0.5 * d * d) * wp[static_cast<std::size_t>(k)];
                }
            }
            const Eigen::MatrixXd conv = kq * dp * kp.transpose() / kTwoPi;
            squared = simpson_2d(layout, dp.cwiseProduct(conv)) / kTwoPi;
            break;
        }
    }
    return std::sqrt(std::max(0.0, squared));
}

void write_csv(std::ostream& out, const PhaseGrid& grid) {
    out << "q,p,value\n";
    for (int i = 0; i < grid.layout.nq; ++i) {
        for (int j = 0; j < grid.layout.np; ++j) {
            out << fmt::format("{:.12g},{:.12g},{:.12g}\n", grid.layout.q(i), grid.layout.p(j), grid.values(i, j));
        }
    }
}

}  // namespace qdist
