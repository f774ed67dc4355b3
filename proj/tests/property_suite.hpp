#pragma once

// Randomized metric-axiom and inequality checks shared by the unit tests and the acceptance run.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qdist/distances.hpp"
#include "qdist/states.hpp"
#include "test_util.hpp"

namespace qdist::testing {

struct AxiomStats {
    double worst_asymmetry = 0.0;
    double worst_triangle = 0.0;  // max of d(a,c) - d(a,b) - d(b,c)
    double worst_self = 0.0;      // max d(a,a)
};

struct AxiomReport {
    std::map<std::string, AxiomStats> metrics;
    double min_dz = 0.0;
    int triples = 0;
};

using Metric = std::function<double(const DensityOperator&, const DensityOperator&)>;

inline std::vector<std::pair<std::string, Metric>> axiom_metrics() {
    return {
        {"hs", [](const auto& a, const auto& b) { return hilbert_schmidt(a, b); }},
        {"jmg", [](const auto& a, const auto& b) { return jmg_distance(a, b); }},
        {"bu", [](const auto& a, const auto& b) { return bures_uhlmann(a, b); }},
        {"modified_hs(1/2)", [](const auto& a, const auto& b) { return modified_hs(a, b, 0.5); }},
        {"d_N", [](const auto& a, const auto& b) { return polarized(a, b, PolarizationOperator::number(a.dim())); }},
        {"modified d_N",
         [](const auto& a, const auto& b) { return polarized_sqrt(a, b, PolarizationOperator::number(a.dim())); }},
    };
}

inline AxiomReport run_metric_axioms(int triples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_dist(4, 16);
    const auto metrics = axiom_metrics();
    AxiomReport report;
    report.triples = triples;
    report.min_dz = HUGE_VAL;
    for (int t = 0; t < triples; ++t) {
        const int dim = dim_dist(rng);
        const DensityOperator a = random_density(rng, dim);
        const DensityOperator b = random_density(rng, dim);
        const DensityOperator c = random_density(rng, dim);
        for (const auto& [name, d] : metrics) {
            auto& s = report.metrics[name];
            const double ab = d(a, b), ba = d(b, a), bc = d(b, c), ac = d(a, c);
            s.worst_asymmetry = std::max(s.worst_asymmetry, std::abs(ab - ba));
            s.worst_triangle = std::max(s.worst_triangle, ac - ab - bc);
            s.worst_self = std::max(s.worst_self, d(a, a));
        }
        const auto z = PolarizationOperator::number(dim);
        report.min_dz = std::min({report.min_dz, quasidistance_DZ(a, b, z), quasidistance_DZ(b, c, z),
                                  quasidistance_DZ(a, c, z)});
    }
    return report;
}

/// Worst violation of the triangle inequality for the annihilation-operator quasidistance on coherent triples.
inline double run_da_triangle(int triples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = -HUGE_VAL;
    for (int t = 0; t < triples; ++t) {
        const complex x = random_amplitude(rng, 2.0), y = random_amplitude(rng, 2.0), z = random_amplitude(rng, 2.0);
        const int dim = std::max({adaptive_dim(StateSpec{family::Coherent{x}}), adaptive_dim(StateSpec{family::Coherent{y}}),
                                  adaptive_dim(StateSpec{family::Coherent{z}})});
        const auto a = outer(coherent(x, dim)), b = outer(coherent(y, dim)), c = outer(coherent(z, dim));
        worst = std::max(worst, quasidistance_Da(a, c) - quasidistance_Da(a, b) - quasidistance_Da(b, c));
    }
    return worst;
}

struct InequalityReport {
    // min over samples of (bound - distance); nonnegative means the bound held everywhere
    double b0_margin = HUGE_VAL;
    double bn_margin = HUGE_VAL;
    double bvar_margin = HUGE_VAL;
    double puremix_margin = HUGE_VAL;
    double puremix_sqrt_margin = HUGE_VAL;
    int states = 0;
};

/// Random states: half random density matrices at dims 10-16, half drawn from the physical families.
inline InequalityReport run_inequalities(int states, int max_n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_dist(max_n + 2, 16);
    std::uniform_int_distribution<int> family_dist(0, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    InequalityReport report;
    report.states = states;
    for (int s = 0; s < states; ++s) {
        DensityOperator rho = random_density(rng, dim_dist(rng));
        if (s % 2 == 1) {
            StateSpec spec;
            switch (family_dist(rng)) {
                case 0: spec = StateSpec{family::Coherent{random_amplitude(rng, 2.0)}}; break;
                case 1: spec = StateSpec{family::Thermal{3.0 * unit(rng)}}; break;
                case 2: spec = StateSpec{family::Cat{random_amplitude(rng, 2.0) + 0.1, 6.3 * unit(rng)}}; break;
                case 3: spec = StateSpec{family::SqueezedVacuum{random_amplitude(rng, 0.7)}}; break;
                default: spec = StateSpec{family::CoherentPhase{random_amplitude(rng, 0.7)}}; break;
            }
            rho = prepare(spec, std::max(adaptive_dim(spec), max_n + 2)).rho;
        }
        const int dim = rho.dim();
        for (int n = 0; n <= max_n; ++n) {
            const double d = hilbert_schmidt(rho, outer(fock(n, dim)));
            const HsBounds b = hs_bounds(rho, n);
            if (b.b0) report.b0_margin = std::min(report.b0_margin, *b.b0 - d);
            report.bn_margin = std::min(report.bn_margin, b.bn - d);
            report.bvar_margin = std::min(report.bvar_margin, b.bvar - d);
        }
        const FockVector psi = random_pure(rng, dim);
        const double bound = puremix_bound(psi, rho);
        report.puremix_margin = std::min(report.puremix_margin, bound - hilbert_schmidt(outer(psi), rho));
        report.puremix_sqrt_margin = std::min(report.puremix_sqrt_margin, bound - modified_hs(outer(psi), rho, 0.5));
    }
    return report;
}

}  // namespace qdist::testing
