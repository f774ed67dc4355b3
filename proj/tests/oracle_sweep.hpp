#pragma once

// Closed forms against the matrix path over the parameter ranges
// |alpha| <= 2.5, tau <= 1.5, |eps| <= 0.9, nbar <= 8, m, n <= 12.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qdist/closed_forms.hpp"
#include "qdist/distances.hpp"
#include "qdist/states.hpp"

namespace qdist::testing {

struct OracleCheck {
    std::string name;
    double max_diff = 0.0;
    int samples = 0;
};

class OracleSweep {
public:
    void record(const std::string& name, double closed_value, double numeric_value) {
        auto it = std::find_if(checks_.begin(), checks_.end(), [&](const OracleCheck& c) { return c.name == name; });
        if (it == checks_.end()) {
            checks_.push_back({name, 0.0, 0});
            it = checks_.end() - 1;
        }
        it->max_diff = std::max(it->max_diff, std::abs(closed_value - numeric_value));
        ++it->samples;
    }
    const std::vector<OracleCheck>& checks() const { return checks_; }

private:
    std::vector<OracleCheck> checks_;
};

inline int pair_dim(const StateSpec& a, const StateSpec& b) { return std::max(adaptive_dim(a), adaptive_dim(b)); }

inline std::vector<OracleCheck> run_oracle_sweep() {
    OracleSweep sweep;
    const std::vector<complex> alphas{{0.0, 0.0},  {0.5, 0.0},   {0.0, 1.3},  {-1.1, 0.9},
                                      {2.5, 0.0},  {1.7, -1.8},  {-2.2, -0.9}, {0.3, 0.2}};

    auto number = [](int dim) { return PolarizationOperator::number(dim); };

    // coherent / coherent
    for (const complex a : alphas) {
        for (const complex b : alphas) {
            const StateSpec sa{family::Coherent{a}}, sb{family::Coherent{b}};
            const int dim = pair_dim(sa, sb);
            const auto ra = outer(coherent(a, dim)), rb = outer(coherent(b, dim));
            const auto c = closed::coherent_pair(a, b);
            sweep.record("coherent/coherent hs", c.at("hs"), hilbert_schmidt(ra, rb));
            sweep.record("coherent/coherent d_N", c.at("dN"), polarized(ra, rb, number(dim)));
            sweep.record("coherent/coherent quasidistance D_a", c.at("Da"), quasidistance_Da(ra, rb));
        }
    }

    // coherent / Fock
    for (const complex a : alphas) {
        for (int m = 0; m <= 12; ++m) {
            const StateSpec sa{family::Coherent{a}}, sb{family::Fock{m}};
            const int dim = pair_dim(sa, sb);
            const auto ra = outer(coherent(a, dim)), rb = outer(fock(m, dim));
            const auto c = closed::coherent_fock(a, m);
            sweep.record("coherent/Fock hs", c.at("hs"), hilbert_schmidt(ra, rb));
            sweep.record("coherent/Fock d_N", c.at("dN"), polarized(ra, rb, number(dim)));
        }
    }

    // Fock / Fock
    for (int m = 0; m <= 12; ++m) {
        for (int n = 0; n <= 12; ++n) {
            const int dim = 16;
            const auto ra = outer(fock(m, dim)), rb = outer(fock(n, dim));
            const auto c = closed::fock_pair(m, n);
            sweep.record("Fock/Fock d_N", c.at("dN"), polarized(ra, rb, number(dim)));
            sweep.record("Fock/Fock quasidistance D_N", c.at("DN"), quasidistance_DZ(ra, rb, number(dim)));
        }
    }

    // squeezed vacua, zeta = tanh(tau) e^{i phi}
    std::vector<complex> zetas;
    for (double tau : {0.0, 0.3, 0.8, 1.2, 1.5}) {
        for (double phi : {0.0, 1.1, -2.4}) {
            if (tau == 0.0 && phi != 0.0) continue;
            zetas.push_back(std::polar(std::tanh(tau), phi));
        }
    }
    for (const complex z1 : zetas) {
        for (const complex z2 : zetas) {
            const StateSpec sa{family::SqueezedVacuum{z1}}, sb{family::SqueezedVacuum{z2}};
            const int dim = pair_dim(sa, sb);
            const auto ra = outer(squeezed_vacuum(z1, dim)), rb = outer(squeezed_vacuum(z2, dim));
            const auto c = closed::squeezed_pair(z1, z2);
            const double hs = hilbert_schmidt(ra, rb);
            const double dn = polarized(ra, rb, number(dim));
            sweep.record("squeezed/squeezed hs", c.at("hs"), hs);
            sweep.record("squeezed/squeezed d_N", c.at("dN"), dn);
            if (c.has("hs_samephase")) {
                sweep.record("squeezed/squeezed hs, equal phases", c.at("hs_samephase"), hs);
                sweep.record("squeezed/squeezed d_N, equal phases", c.at("dN_samephase"), dn);
            }
        }
    }

    // cat states
    const std::vector<complex> cat_alphas{{0.3, 0.0}, {1.0, 0.0}, {1.8, 0.6}, {0.0, 2.5}, {-1.2, -1.1}};
    const std::vector<double> phis{0.0, 0.7, 1.5707963267948966, 2.4, 3.141592653589793};
    for (const complex a : cat_alphas) {
        for (double p1 : phis) {
            const StateSpec s1{family::Cat{a, p1}};
            const int dim = pair_dim(s1, StateSpec{family::Coherent{a}});
            const auto r1 = outer(cat(a, p1, dim));
            const auto c = closed::cat_distances(a, p1, p1);
            const auto vac = outer(fock(0, dim));
            sweep.record("cat/coherent hs", c.at("d_to_coherent"), hilbert_schmidt(r1, outer(coherent(a, dim))));
            sweep.record("cat/vacuum hs", c.at("d_to_vacuum"), hilbert_schmidt(r1, vac));
            sweep.record("cat/vacuum d_N", c.at("dN_to_vacuum"), polarized(r1, vac, number(dim)));
            for (double p2 : phis) {
                const auto r2 = outer(cat(a, p2, dim));
                const auto cc = closed::cat_distances(a, p1, p2);
                sweep.record("cat/cat hs", cc.at("d_between"), hilbert_schmidt(r1, r2));
                sweep.record("cat/cat d_N", cc.at("dN_between"), polarized(r1, r2, number(dim)));
            }
        }
    }

    // coherent phase states
    const std::vector<complex> epss{{0.0, 0.0}, {0.3, 0.0}, {0.0, -0.6}, {0.5, 0.5}, {-0.9, 0.0}, {0.6, -0.67}};
    for (const complex e1 : epss) {
        for (const complex e2 : epss) {
            const StateSpec sa{family::CoherentPhase{e1}}, sb{family::CoherentPhase{e2}};
            const int dim = pair_dim(sa, sb);
            const auto ra = outer(coherent_phase(e1, dim)), rb = outer(coherent_phase(e2, dim));
            const auto c = closed::phase_pair(e1, e2);
            sweep.record("phase/phase hs", c.at("hs"), hilbert_schmidt(ra, rb));
            sweep.record("phase/phase d_N", c.at("dN"), polarized(ra, rb, number(dim)));
        }
    }

    // thermal states, and phase states with matching mean photon numbers
    const std::vector<double> nbars{0.0, 0.25, 1.0, 2.5, 5.0, 8.0};
    for (double n1 : nbars) {
        for (double n2 : nbars) {
            const StateSpec sa{family::Thermal{n1}}, sb{family::Thermal{n2}};
            const int dim = pair_dim(sa, sb);
            const auto ra = thermal(n1, dim), rb = thermal(n2, dim);
            const auto c = closed::thermal_pair(n1, n2);
            sweep.record("thermal/thermal hs", c.at("hs"), hilbert_schmidt(ra, rb));
            sweep.record("thermal/thermal Bures-Uhlmann", c.at("bu"), bures_uhlmann(ra, rb));
            sweep.record("thermal/thermal d_N", c.at("dN"), polarized(ra, rb, number(dim)));
            sweep.record("thermal/thermal modified d_N", c.at("dN_sqrt"), polarized_sqrt(ra, rb, number(dim)));

            const complex e1 = std::sqrt(n1 / (1.0 + n1));
            const complex e2 = std::sqrt(n2 / (1.0 + n2));
            const int pdim = pair_dim(StateSpec{family::CoherentPhase{e1}}, StateSpec{family::CoherentPhase{e2}});
            sweep.record("pseudothermal minimum d_N", c.at("dN_min_pseudo"),
                         polarized(outer(coherent_phase(e1, pdim)), outer(coherent_phase(e2, pdim)), number(pdim)));
        }
    }
    return sweep.checks();
}

}  // namespace qdist::testing
