#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdist {

using complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
/// Eigenvalues in [-kPsdClamp, 0) are clamped to zero; anything lower is an error.
inline constexpr double kPsdClamp = 1e-10;

/// Pure state in the truncated number basis |0>, ..., |dim-1>.
class FockVector {
public:
    /// Takes the amplitudes as given; throws if the norm is off by more than kNormTolerance.
    explicit FockVector(Vector amp);

    /// Rescales to unit norm before validating. Throws on a zero vector.
    static FockVector normalized(Vector amp);

    int dim() const { return static_cast<int>(amp_.size()); }
    const Vector& amp() const { return amp_; }
    complex operator[](int n) const { return amp_(n); }

private:
    Vector amp_;
};

/// Hermitian, trace-one operator on the truncated number basis.
///
/// Construction checks hermiticity and trace and then exactly symmetrizes the
/// stored matrix. Positivity is checked lazily by every routine that
/// diagonalizes the operator.
class DensityOperator {
public:
    explicit DensityOperator(Matrix mat);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }
    complex operator()(int m, int n) const { return mat_(m, n); }

private:
    Matrix mat_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;  // columns

    Matrix reconstruct() const;
};

struct JacobiOptions {
    double relative_tolerance = 1e-14;
    int max_sweeps = 100;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Stops once the off-diagonal Frobenius mass drops below
/// `relative_tolerance * ||A||_F`. Throws NumericalError if the input is not
/// Hermitian within kHermitianTolerance (relative to its largest entry) or the
/// sweep budget runs out.
Spectrum eigh(const Matrix& a, const JacobiOptions& options = {});

DensityOperator outer(const FockVector& psi);

/// Convex combination sum_i w_i rho_i; weights must be nonnegative and sum to one.
DensityOperator mixture(std::span<const double> weights, std::span<const DensityOperator> states);

/// Re Tr(AB). Throws if the imaginary part exceeds 1e-12.
double trace_product(const DensityOperator& a, const DensityOperator& b);

double purity(const DensityOperator& rho);

/// Unique PSD square root. Eigenvalues in [-kPsdClamp, 0) are clamped to zero.
Matrix hermitian_sqrt(const Matrix& rho);
Matrix hermitian_sqrt(const DensityOperator& rho);

/// rho^p for p > 0 through the spectrum, with the same clamping rule as hermitian_sqrt.
Matrix hermitian_power(const Matrix& rho, double p);

/// Sum of |lambda| over the eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& delta);

/// <psi|A|psi>
complex expectation(const FockVector& psi, const Matrix& a);
complex overlap(const FockVector& a, const FockVector& b);  // <a|b>

/// Truncated ladder operators and the number operator.
Matrix annihilation(int dim);
Matrix number_operator(int dim);

double max_abs(const Matrix& m);

}  // namespace qdist
