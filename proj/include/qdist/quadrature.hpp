#pragma once

#include <vector>

namespace qdist::quad {

/// Composite Simpson weights for n uniformly spaced samples with spacing h.
/// An even sample count closes with a Simpson 3/8 panel. Requires n >= 3.
std::vector<double> simpson_weights(int n, double h);

/// Composite trapezoid weights.
std::vector<double> trapezoid_weights(int n, double h);

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Gauss-Laguerre rule for int_0^inf e^{-t} f(t) dt.
Rule gauss_laguerre(int n);

}  // namespace qdist::quad
