#pragma once

#include "radiant/geometry.hpp"

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>

namespace radiant {

using ComplexMatrix = Eigen::MatrixXcd;

struct PhysicalParams {
    double rabi = 0.0;        // Omega_L, angular frequency
    double detuning = 0.0;    // Delta, angular frequency; must be nonzero
    double laser_omega = 0.0; // omega_L, angular frequency
    double dipole = 0.0;      // d_ga, SI
    Vec3 laser_dir = Vec3::UnitZ();
};

enum class CouplingProvenance { Fixed, Ensemble };

struct CouplingMatrix {
    ComplexMatrix entries; // units of the single-atom rate
    CouplingProvenance provenance = CouplingProvenance::Fixed;
    double parameter = 0.0; // echoes k_L*d0 (fixed) or k_L*L (ensemble)

    int size() const { return static_cast<int>(entries.rows()); }
};

// Single-atom decay rate of the far-detuned Lambda scheme,
// (1/3pi) (Omega_L / 2 Delta)^2 omega_L^3 d_ga^2 / (eps0 c^3).
double gamma_bar(const PhysicalParams &params);

// Fixed-position coefficient matrix: J_ii = 1/2 and
// J_ij = (1/2) e^{-i k_L.(r_i - r_j)} (sinc(x) - i cos(x)/x), x = k_L|r_i - r_j|.
// Coincident atoms (x < 1e-9) are rejected.
CouplingMatrix coupling_fixed(const AtomArray &atoms, const Vec3 &laser_dir);

// Motion-averaged ensemble matrix: J_ii = 1/2, J_ij = 1/(4 (k_L L)^2).
CouplingMatrix coupling_ensemble(int n, double kl_cloud_size);

// CSV dump "i,j,re,im", row-major, for fixture comparison.
void dump_coupling_csv(std::ostream &out, const CouplingMatrix &m);

} // namespace radiant
