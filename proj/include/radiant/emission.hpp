#pragma once

#include "radiant/geometry.hpp"
#include "radiant/modes.hpp"
#include "radiant/quadrature.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace radiant {

enum class DistributionKind {
    Exact,
    Planewave, // unnormalized interference pattern; integral = rate
    Gaussian3D,
    EnsembleCoherent,
    EnsembleIncoherent,
};

struct AngularDistribution {
    AngularGrid grid;
    std::vector<double> values; // photons per steradian at each node
    DistributionKind kind = DistributionKind::Exact;
    // Modes dropped from the emission kernel because their rate was below
    // the subradiant cutoff.
    std::vector<int> excluded_modes;

    double integral() const; // pairwise-summed quadrature of values
};

struct BraggPeak {
    std::array<int, 3> m = {0, 0, 0};
    bool exists = false;     // energy-momentum condition met on the sphere
    Vec3 direction = Vec3::UnitZ(); // peak direction (3D) or cone axis (1D)
    double cone_cos = 1.0;   // 1D: cos(theta) of the emission cone
    double probability = 0.0;
};

struct PredictedRates {
    double rate = 0.0; // Gamma_n in units of the single-atom rate
    double enhancement = 0.0; // chi_1D or chi_3D
    bool superradiant = false;
    double beam_width = 0.0;     // Delta theta
    double forward_probability = 1.0; // p_0^[0] (1D, n = 0 convention)
    double escape_probability = 0.0;  // 3D, off-forward emission
    bool peak_exists = false;         // 3D: some m_c satisfies the condition
    std::array<int, 3> m_c = {0, 0, 0};
    Vec3 peak_direction = Vec3::UnitZ();
};

struct RateEstimate {
    double rate = 0.0;
    bool resolution_warning = false; // peak narrower than 5 node spacings
};

struct PhotonMode {
    std::vector<double> omega;           // (omega_k - omega_L) / Gamma_bar
    std::vector<double> radial_marginal; // probability density over omega
    std::vector<double> angular_values;  // on grid nodes, at line center
    AngularGrid grid;
    double radial_hwhm = 0.0; // half width at half maximum of the marginal
    double total = 1.0;
};

struct ValidityReport {
    bool valid = false;
    double max_ratio = 0.0; // max_n Gamma_n L / c
    double margin = 0.0;    // threshold / max_ratio
    bool shift_ok = true;   // max |Delta_n| << omega_L
};

// Exact single-photon angular distribution of Eq.-level kernel
// I(Omega) = (1/4pi) sum_{n n'} conj(w_n) w_n' / (J_n^* + J_n'),
// w_n = (M^{-1} psi)_n sum_l M_{l n} e^{-i (k_L u - k_L) . r_l}.
// psi must be a normalized single-excitation amplitude vector.
AngularDistribution angular_distribution_exact(const ModeDecomposition &d,
                                               const AtomArray &atoms,
                                               const Vec3 &laser_dir,
                                               const ComplexVector &psi,
                                               const AngularGrid &grid);

// Plane-wave interference pattern for spin-wave n (unnormalized;
// integrating it gives Gamma_n / Gamma_bar).
AngularDistribution angular_distribution_planewave(const LatticeSpec &spec,
                                                   const Vec3 &laser_dir,
                                                   const std::array<int, 3> &n,
                                                   const AngularGrid &grid);

RateEstimate rate_from_normalization(const AngularDistribution &dist);

// Diffraction-peak decomposition of the plane-wave pattern.
std::vector<BraggPeak> bragg_decompose(const LatticeSpec &spec,
                                       const Vec3 &laser_dir,
                                       const std::array<int, 3> &n);

// Closed-form 1D rate ladder (Heaviside(0) = 1/2 convention), width and
// forward-peak probability. Laser along the chain.
PredictedRates predict_1d(const LatticeSpec &spec, int n);

// 3D cubic-lattice predictor: peak existence, direction, chi_3D rate in
// the directional regime; Appendix-C forward-scattering limit for the
// symmetric mode when lambda << d0.
PredictedRates predict_3d(const LatticeSpec &spec, const Vec3 &laser_dir,
                          const std::array<int, 3> &n);

// Outgoing photon mode amplitudes on a radial x angular grid.
PhotonMode photon_mode(const ModeDecomposition &d, const AtomArray &atoms,
                       const Vec3 &laser_dir, int n, const AngularGrid &grid,
                       int radial_points = 2001);

// FWHM of I(theta) along the great circle through the global maximum.
// Throws std::runtime_error if the distribution has no unique peak.
double beam_width(const AngularDistribution &dist);

// Appendix-A regime check: emission must complete before the photon
// crosses the sample.
ValidityReport propagation_validity(const ModeDecomposition &d,
                                    double gamma_bar_hz, double length_m,
                                    double omega_l_hz = 0.0);

// CSV dump "theta,phi,weight,intensity".
void dump_angular_csv(std::ostream &out, const AngularDistribution &dist);
// CSV dump "m1,m2,m3,exists,ux,uy,uz,p".
void dump_bragg_csv(std::ostream &out, const std::vector<BraggPeak> &peaks);

} // namespace radiant
