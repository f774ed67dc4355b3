#include "qdist/quadrature.hpp"

#include <memory>

#include <gsl/gsl_integration.h>

#include "qdist/errors.hpp"

namespace qdist::quad {

namespace {

Rule fixed_rule(const gsl_integration_fixed_type* type, int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature rule needs at least one node");
    std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
        gsl_integration_fixed_alloc(type, static_cast<std::size_t>(n), a, b, 0.0, 0.0), &gsl_integration_fixed_free);
    if (!ws) throw NumericalError("gsl_integration_fixed_alloc failed");
    const double* x = gsl_integration_fixed_nodes(ws.get());
    const double* w = gsl_integration_fixed_weights(ws.get());
    return {std::vector<double>(x, x + n), std::vector<double>(w, w + n)};
}

}  // namespace

std::vector<double> simpson_weights(int n, double h) {
    if (n < 3) throw DomainError("simpson_weights: need at least 3 samples");
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    // Simpson 1/3 over an even number of intervals, plus a trailing 3/8 panel if needed.
    const int intervals = n - 1;
    const int simpson_intervals = (intervals % 2 == 0) ? intervals : intervals - 3;
    for (int i = 0; i < simpson_intervals; i += 2) {
        w[static_cast<std::size_t>(i)] += h / 3.0;
        w[static_cast<std::size_t>(i + 1)] += 4.0 * h / 3.0;
        w[static_cast<std::size_t>(i + 2)] += h / 3.0;
    }
    if (simpson_intervals != intervals) {
        const int i = simpson_intervals;
        w[static_cast<std::size_t>(i)] += 3.0 * h / 8.0;
        w[static_cast<std::size_t>(i + 1)] += 9.0 * h / 8.0;
        w[static_cast<std::size_t>(i + 2)] += 9.0 * h / 8.0;
        w[static_cast<std::size_t>(i + 3)] += 3.0 * h / 8.0;
    }
    return w;
}

std::vector<double> trapezoid_weights(int n, double h) {
    if (n < 2) throw DomainError("trapezoid_weights: need at least 2 samples");
    std::vector<double> w(static_cast<std::size_t>(n), h);
    w.front() = w.back() = 0.5 * h;
    return w;
}

Rule gauss_legendre(int n, double a, double b) { return fixed_rule(gsl_integration_fixed_legendre, n, a, b); }

Rule gauss_laguerre(int n) { return fixed_rule(gsl_integration_fixed_laguerre, n, 0.0, 1.0); }

}  // namespace qdist::quad
