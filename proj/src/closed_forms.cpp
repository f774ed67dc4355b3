#include "qdist/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "qdist/errors.hpp"

namespace qdist::closed {

namespace {

using std::abs;
using std::cos;
using std::exp;
using std::norm;
using std::sqrt;
using cplx = std::complex<double>;

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

double sqrt0(double x) { return sqrt(std::max(0.0, x)); }

void require_unit_disk(cplx z, const char* what) {
    if (!(abs(z) < 1.0)) throw DomainError(std::string(what) + ": modulus must be < 1");
}

// Poisson weight |alpha|^{2m} e^{-|alpha|^2} / m!
double poisson(double lambda, int m) {
    if (lambda == 0.0) return m == 0 ? 1.0 : 0.0;
    return exp(m * std::log(lambda) - lambda - std::lgamma(m + 1.0));
}

}  // namespace

ClosedFormResult coherent_pair(cplx alpha, cplx beta) {
    const double gap2 = norm(alpha - beta);
    const double e = exp(-gap2);
    ClosedFormResult r;
    r.values["hs"] = kSqrt2 * sqrt0(1.0 - e);
    r.values["dN"] = sqrt0(norm(alpha) + norm(beta) - 2.0 * (std::conj(beta) * alpha).real() * e);
    r.values["Da"] = sqrt(gap2) / kSqrt2 * sqrt(1.0 + e);
    return r;
}

ClosedFormResult coherent_fock(cplx alpha, int m) {
    if (m < 0) throw DomainError("coherent_fock: m must be >= 0");
    const double lambda = norm(alpha);
    ClosedFormResult r;
    r.values["hs"] = kSqrt2 * sqrt0(1.0 - poisson(lambda, m));
    // 2 |alpha|^{2m} e^{-|alpha|^2} / (m-1)! = 2 m Poisson(m); vanishes for m = 0
    r.values["dN"] = sqrt0(m + lambda - 2.0 * m * poisson(lambda, m));
    return r;
}

ClosedFormResult fock_pair(int m, int n) {
    if (m < 0 || n < 0) throw DomainError("fock_pair: indices must be >= 0");
    ClosedFormResult r;
    r.values["hs"] = (m == n) ? 0.0 : kSqrt2;
    r.values["dN"] = (m == n) ? 0.0 : sqrt(static_cast<double>(m + n));
    r.values["DN"] = abs(sqrt(static_cast<double>(n)) - sqrt(static_cast<double>(m))) / kSqrt2;
    return r;
}

ClosedFormResult squeezed_pair(cplx z1, cplx z2) {
    require_unit_disk(z1, "squeezed_pair");
    require_unit_disk(z2, "squeezed_pair");
    const double a1 = norm(z1);
    const double a2 = norm(z2);
    const cplx w = z1 * std::conj(z2);
    const double m = abs(1.0 - w);
    const double root = sqrt((1.0 - a1) * (1.0 - a2));

    ClosedFormResult r;
    r.values["hs"] = kSqrt2 * abs(z1 - z2) / sqrt(m * (m + root));
    r.values["dN"] = sqrt0(a1 / (1.0 - a1) + a2 / (1.0 - a2) + 2.0 * (a1 * a2 - w.real()) / (m * m * m) * root);

    const bool same_phase = abs(z1) == 0.0 || abs(z2) == 0.0 || abs(std::arg(z1) - std::arg(z2)) < 1e-12;
    if (same_phase) {
        const double t1 = std::atanh(abs(z1));
        const double t2 = std::atanh(abs(z2));
        r.values["hs_samephase"] = 2.0 * abs(std::sinh(0.5 * (t1 - t2))) / sqrt(std::cosh(t1 - t2));
        const double c = std::cosh(t1 - t2);
        r.values["dN_samephase"] = sqrt0(std::sinh(t1) * std::sinh(t1) + std::sinh(t2) * std::sinh(t2) -
                                         2.0 * std::sinh(t1) * std::sinh(t2) / (c * c));
    }
    return r;
}

ClosedFormResult cat_distances(cplx alpha, double phi1, double phi2) {
    const double a2 = norm(alpha);
    const double e2 = exp(-2.0 * a2);
    const double e4 = exp(-4.0 * a2);
    const double n1 = 1.0 + cos(phi1) * e2;
    const double n2 = 1.0 + cos(phi2) * e2;
    if (!(n1 > 1e-14) || !(n2 > 1e-14)) throw DomainError("cat_distances: degenerate cat normalization");
    const double dphi = 1.0 - cos(phi1 - phi2);

    ClosedFormResult r;
    r.values["d_to_coherent"] = sqrt0((1.0 - e4) / n1);
    r.values["d_to_vacuum"] = sqrt0(2.0 * (1.0 - exp(-a2) * (1.0 + cos(phi1)) / n1));
    r.values["d_to_vacuum_printed"] = sqrt0(2.0 * (1.0 - exp(-a2)) / n1);
    r.values["d_between"] = sqrt0((1.0 - e4) * dphi / (n1 * n2));
    r.values["dN_to_vacuum"] = sqrt0(a2 * (1.0 - cos(phi1) * e2) / n1);
    r.values["dN_between"] = sqrt0(a2 * (1.0 + e4) * dphi / (n1 * n2));

    const double half = std::sin(0.5 * abs(phi1 - phi2));
    r.values["d_between_large_alpha"] = kSqrt2 * abs(half);
    r.values["dN_between_large_alpha"] = kSqrt2 * sqrt(a2) * abs(half);
    r.approximations = {"d_between_large_alpha", "dN_between_large_alpha"};
    return r;
}

ClosedFormResult phase_pair(cplx e1, cplx e2) {
    require_unit_disk(e1, "phase_pair");
    require_unit_disk(e2, "phase_pair");
    const double a1 = norm(e1);
    const double a2 = norm(e2);
    const cplx w = e1 * std::conj(e2);
    ClosedFormResult r;
    r.values["hs"] = kSqrt2 * abs(e1 - e2) / abs(1.0 - w);
    const double denom = 1.0 - 2.0 * w.real() + a1 * a2;
    // the three terms cancel to rounding level for coincident states
    r.values["dN"] = e1 == e2 ? 0.0 : sqrt0(a1 / (1.0 - a1) + a2 / (1.0 - a2) +
                           2.0 * (1.0 - a1) * (1.0 - a2) * (a1 * a2 - w.real()) / (denom * denom));
    return r;
}

ClosedFormResult thermal_pair(double n1, double n2) {
    if (!(n1 >= 0.0) || !(n2 >= 0.0)) throw DomainError("thermal_pair: nbar must be >= 0");
    const double s = 1.0 + n1 + n2;
    const double frac = (sqrt((1.0 + n1) * (1.0 + n2)) + sqrt(n1 * n2)) / s;
    const double gm = sqrt(n1 * n2);

    ClosedFormResult r;
    r.values["hs"] = kSqrt2 * abs(n1 - n2) / sqrt((1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) * s);
    r.values["bu"] = kSqrt2 * sqrt0(1.0 - frac);
    r.values["dN"] = abs(n1 - n2) * sqrt(s * s + 2.0 * n1 * n2 * (1.0 + 2.0 * n1) * (1.0 + 2.0 * n2)) /
                     ((1.0 + 2.0 * n1) * (1.0 + 2.0 * n2) * s);
    r.values["dN_sqrt"] = sqrt0(n1 + n2 - 2.0 * gm * frac * frac);
    r.values["dN_min_pseudo"] = sqrt0(n1 + n2 - 2.0 * gm * frac * frac * frac);

    const double gap = abs(sqrt(n1) - sqrt(n2));
    if (n1 + n2 > 0.0) {
        const double sum = n1 + n2;
        r.values["bu_large_nbar"] = kSqrt2 * gap / sqrt(sum);
        r.values["dN_sqrt_sq_large_nbar"] = sum - 8.0 * std::pow(n1 * n2, 1.5) / (sum * sum);
        r.values["dN_min_sq_large_nbar"] = sum - 16.0 * (n1 * n2) * (n1 * n2) / (sum * sum * sum);
        r.values["dN_sqrt_close"] = sqrt(3.0) * gap;
        r.values["dN_min_close"] = 2.0 * gap;
        r.approximations = {"bu_large_nbar", "dN_sqrt_sq_large_nbar", "dN_min_sq_large_nbar", "dN_sqrt_close",
                            "dN_min_close"};
    }
    return r;
}

ClosedFormResult tomographic_coherent(cplx alpha, cplx beta) {
    const double gap2 = norm(alpha - beta);
    // The integrand depends on cos^2 only, so [0, pi/2] times four. Composite Gauss-Legendre
    // (8 panels x 10 points) handles the kink of |cos| at the end of the interval.
    static constexpr double x10[] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                                     -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                                     0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                                     0.9739065285171717};
    static constexpr double w10[] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                                     0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                                     0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                                     0.0666713443086881};
    constexpr int panels = 64;
    const double h = 0.5 * kPi / panels;
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int i = 0; i < 10; ++i) {
            const double t = mid + 0.5 * h * x10[i];
            const double c = cos(t);
            // 2 - 2 e^{-x} = 2(-expm1(-x)) keeps precision for tiny gaps
            integral += 0.5 * h * w10[i] * sqrt0(-2.0 * std::expm1(-0.5 * gap2 * c * c));
        }
    }
    ClosedFormResult r;
    r.values["hellinger"] = 4.0 * integral;
    r.values["bhattacharyya"] = 0.5 * kPi * gap2;
    r.values["kullback"] = 4.0 * kPi * gap2;
    r.values["hellinger_small"] = 4.0 * sqrt(gap2);
    r.values["hellinger_large"] = 2.0 * kPi * kSqrt2;
    r.approximations = {"hellinger_small", "hellinger_large"};
    return r;
}

}  // namespace qdist::closed
