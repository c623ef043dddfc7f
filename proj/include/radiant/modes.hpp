#pragma once

#include "radiant/coupling.hpp"
#include "radiant/geometry.hpp"

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace radiant {

using ComplexVector = Eigen::VectorXcd;

struct ModeDecomposition {
    ComplexMatrix modes;      // M, columns are eigenvectors
    ComplexMatrix modes_inv;  // M^{-1}
    ComplexVector eigenvalues; // J_n, units of the single-atom rate
    bool analytic_planewave = false;
    // Condition estimate of the eigenvector matrix; large values signal a
    // nearly defective J.
    double eigenvector_condition = 1.0;

    int size() const { return static_cast<int>(modes.rows()); }
    double rate(int n) const { return 2.0 * eigenvalues[n].real(); }
    double shift(int n) const { return 2.0 * eigenvalues[n].imag(); }
};

struct SpinWave {
    ComplexVector coefficients; // normalized over atoms
    double normalization = 1.0; // N_n applied
    int mode_index = -1;
};

struct SumRuleReport {
    double rate_sum = 0.0;
    double shift_sum = 0.0;
    double rate_residual = 0.0;  // |sum Gamma_n - N| / N
    double shift_residual = 0.0; // |sum Delta_n| / N
};

struct ExcitationReport {
    double amplitude = 0.0;       // alpha = Omega_AB T / 2
    double mean_excitation = 0.0; // |alpha|^2
    bool low_excitation_valid = true;
};

// Dense nonsymmetric eigendecomposition of the coupling matrix.
// Eigenvalues sorted by descending rate, ties by ascending shift then by
// original index; eigenvector phases fixed deterministically; degenerate
// blocks orthonormalized.
ModeDecomposition diagonalize(const CouplingMatrix &coupling);

SumRuleReport sum_rule_report(const ModeDecomposition &d);

// Analytic discrete-Fourier eigenvectors M_{jn} = e^{i K_n . r_j} / sqrt(N)
// for a periodic lattice; eigenvalues left unset (zero).
ModeDecomposition planewave_decomposition(const LatticeSpec &spec);

// Assigns to each numeric eigenvector the wavevector index maximizing its
// Fourier overlap; ties broken by smaller |n|.
std::vector<std::array<int, 3>> label_modes(const ModeDecomposition &d,
                                            const WavevectorGrid &grid,
                                            const AtomArray &atoms);

// Normalized single-excitation spin-wave state for mode n.
SpinWave spinwave_state(const ModeDecomposition &d, int n);

// Coherent spin-wave preparation by a two-laser pulse of area Omega_AB * T.
ExcitationReport prepare_coherent_spinwave(double omega_ab_times_t, int atom_count);

// Mode table CSV: "n_label,re_J,im_J,rate,shift".
void dump_mode_table_csv(std::ostream &out, const ModeDecomposition &d,
                         const std::vector<std::array<int, 3>> &labels);

} // namespace radiant
