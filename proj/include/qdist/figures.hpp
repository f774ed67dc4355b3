#pragma once

#include <iosfwd>
#include <vector>

namespace qdist {

/// Coherent state |alpha> against Fock state |m>.
struct Figure1Row {
    double alpha_sq = 0.0;
    int m = 0;
    double d_hs = 0.0;
    double d_n = 0.0;
};

/// Vacuum against thermal(nbar) and against the phase state with the same mean photon number.
struct Figure2Row {
    double nbar = 0.0;
    double d_n_thermal = 0.0;
    double d_hs_thermal = 0.0;
    double d_bu_thermal = 0.0;
    double d_hs_pseudo = 0.0;
    double d_n_pseudo = 0.0;
    double d_n_tilde_thermal = 0.0;
};

/// |alpha|^2 = 0, 0.1, ..., 10 for m = 1, 2, 3, ordered by m then |alpha|^2.
std::vector<Figure1Row> figure1();
Figure1Row figure1_row(double alpha_sq, int m);

/// nbar = 0, 0.1, ..., 10.
std::vector<Figure2Row> figure2();
Figure2Row figure2_row(double nbar);

void write_figure1(std::ostream& out, const std::vector<Figure1Row>& rows);
void write_figure2(std::ostream& out, const std::vector<Figure2Row>& rows);

}  // namespace qdist
