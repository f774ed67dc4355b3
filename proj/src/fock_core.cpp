#include "qdist/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdist/errors.hpp"

namespace qdist {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

double off_diagonal_frobenius(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

void require_hermitian(const Matrix& a, const char* what) {
    if (a.rows() != a.cols()) throw DimensionMismatch(std::string(what) + ": matrix is not square");
    const double scale = std::max(1.0, max_abs(a));
    const double defect = max_abs(a - a.adjoint());
    if (defect > kHermitianTolerance * scale) {
        throw NumericalError(std::string(what) + ": input is not Hermitian (defect " +
                             std::to_string(defect) + ")");
    }
}

Eigen::VectorXd clamped_eigenvalues(const Spectrum& s, const char* what) {
    Eigen::VectorXd ev = s.eigenvalues;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -kPsdClamp) {
            throw NotPsdError(std::string(what) + ": eigenvalue " + std::to_string(ev(i)) +
                              " below -1e-10");
        }
        ev(i) = std::max(ev(i), 0.0);
    }
    return ev;
}

}  // namespace

FockVector::FockVector(Vector amp) : amp_(std::move(amp)) {
    if (amp_.size() < 1) throw DomainError("FockVector: dim must be >= 1");
    const double norm2 = amp_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw NumericalError("FockVector: squared norm " + std::to_string(norm2) + " is not 1");
    }
}

FockVector FockVector::normalized(Vector amp) {
    const double norm = amp.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("FockVector: cannot normalize");
    amp /= norm;
    return FockVector(std::move(amp));
}

DensityOperator::DensityOperator(Matrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
        throw DomainError("DensityOperator: matrix must be square with dim >= 1");
    }
    const double defect = max_abs(mat_ - mat_.adjoint());
    if (defect > kHermitianTolerance) {
        throw NumericalError("DensityOperator: not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const complex tr = mat_.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw NumericalError("DensityOperator: trace " + std::to_string(tr.real()) + " is not 1");
    }
    mat_ = (0.5 * (mat_ + mat_.adjoint())).eval();
}

Matrix Spectrum::reconstruct() const {
    return eigenvectors * eigenvalues.cast<complex>().asDiagonal() * eigenvectors.adjoint();
}

Spectrum eigh(const Matrix& input, const JacobiOptions& options) {
    require_hermitian(input, "eigh");
    const Eigen::Index n = input.rows();
    Matrix a = 0.5 * (input + input.adjoint());
    Matrix v = Matrix::Identity(n, n);

    const double target = options.relative_tolerance * a.norm();
    int sweep = 0;
    while (off_diagonal_frobenius(a) > target) {
        if (++sweep > options.max_sweeps) throw NumericalError("eigh: Jacobi sweeps did not converge");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const complex apq = a(p, q);
                const double mod = std::abs(apq);
                if (mod == 0.0) continue;
                // Phase rotation makes the (p, q) entry real, then a real Jacobi rotation zeroes it.
                const complex g = apq / mod;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mod);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const complex gc = std::conj(g);

                // a <- a U with U[:,p] = (c, -s g*), U[:,q] = (s, c g*) restricted to rows p, q.
                for (Eigen::Index k = 0; k < n; ++k) {
                    const complex akp = a(k, p);
                    const complex akq = a(k, q);
                    a(k, p) = c * akp - s * gc * akq;
                    a(k, q) = s * akp + c * gc * akq;
                }
                // a <- U^dagger a
                for (Eigen::Index k = 0; k < n; ++k) {
                    const complex apk = a(p, k);
                    const complex aqk = a(q, k);
                    a(p, k) = c * apk - s * g * aqk;
                    a(q, k) = s * apk + c * g * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const complex vkp = v(k, p);
                    const complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * gc * vkq;
                    v(k, q) = s * vkp + c * gc * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
    Spectrum out{Eigen::VectorXd(n), Matrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = a(order[i], order[i]).real();
        out.eigenvectors.col(i) = v.col(order[i]);
    }
    return out;
}

DensityOperator outer(const FockVector& psi) {
    return DensityOperator(psi.amp() * psi.amp().adjoint());
}

DensityOperator mixture(std::span<const double> weights, std::span<const DensityOperator> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw DomainError("mixture: need one weight per state and at least one state");
    }
    const int dim = states.front().dim();
    Matrix m = Matrix::Zero(dim, dim);
    double total = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        require_same_dim(dim, states[i].dim(), "mixture");
        if (weights[i] < 0.0) throw DomainError("mixture: negative weight");
        m += weights[i] * states[i].mat();
        total += weights[i];
    }
    if (std::abs(total - 1.0) > kTraceTolerance) throw DomainError("mixture: weights do not sum to 1");
    return DensityOperator(std::move(m));
}

double trace_product(const DensityOperator& a, const DensityOperator& b) {
    require_same_dim(a.dim(), b.dim(), "trace_product");
    // Tr(AB) = sum_ij A_ij B_ji
    const complex tr = (a.mat().array() * b.mat().transpose().array()).sum();
    if (std::abs(tr.imag()) > 1e-12) {
        throw NumericalError("trace_product: imaginary part " + std::to_string(tr.imag()));
    }
    return tr.real();
}

double purity(const DensityOperator& rho) { return rho.mat().squaredNorm(); }

Matrix hermitian_power(const Matrix& rho, double p) {
    if (!(p > 0.0)) throw DomainError("hermitian_power: exponent must be positive");
    const Spectrum s = eigh(rho);
    Eigen::VectorXd ev = clamped_eigenvalues(s, "hermitian_power");
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = (ev(i) == 0.0) ? 0.0 : std::pow(ev(i), p);
    Matrix out = s.eigenvectors * ev.cast<complex>().asDiagonal() * s.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

Matrix hermitian_sqrt(const Matrix& rho) {
    const Spectrum s = eigh(rho);
    Eigen::VectorXd ev = clamped_eigenvalues(s, "hermitian_sqrt");
    ev = ev.cwiseSqrt();
    Matrix out = s.eigenvectors * ev.cast<complex>().asDiagonal() * s.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

Matrix hermitian_sqrt(const DensityOperator& rho) { return hermitian_sqrt(rho.mat()); }

double trace_norm(const Matrix& delta) {
    return eigh(delta).eigenvalues.cwiseAbs().sum();
}

complex expectation(const FockVector& psi, const Matrix& a) {
    require_same_dim(psi.dim(), static_cast<int>(a.rows()), "expectation");
    return psi.amp().dot(a * psi.amp());
}

complex overlap(const FockVector& a, const FockVector& b) {
    require_same_dim(a.dim(), b.dim(), "overlap");
    return a.amp().dot(b.amp());  // conjugates the first argument
}

Matrix annihilation(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix number_operator(int dim) {
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace qdist
