#pragma once

#include "radiant/emission.hpp"
#include "radiant/geometry.hpp"
#include "radiant/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace radiant {

// Fast-motion-limit photon state of the symmetric spin-wave: a coherent
// forward lobe with weight 1 - eps plus an isotropic incoherent component
// with weight eps = 1/(1 + chi_en). Radial structure is a Lorentzian of
// half-width J0; the incoherent kernel factorizes into that (pure) radial
// part times a Gaussian angular overlap, kept as a callable.
struct MixedPhotonState {
    double epsilon = 1.0;
    double chi = 0.0;     // chi_en
    double kl_size = 0.0; // k_L L
    double j0 = 0.5;      // Gamma_bar (chi_en + 1) / 2, units of Gamma_bar
    std::vector<double> omega;            // (omega_k - omega_L)/Gamma_bar
    std::vector<double> radial_profile;   // |phi(omega)|^2, trace 1 on grid
    bool radial_resolution_warning = false;

    // Angular overlap kernel of the incoherent component (unnormalized
    // amplitude form e^{-|k - k'|^2 L^2 / 4} at the shell k = k' = k_L).
    double incoherent_kernel(const Vec3 &u, const Vec3 &u_prime) const;
};

struct PurityReport {
    double formula = 0.0;          // (1 - eps)^2
    double numeric = 0.0;          // Tr(rho^2) on the discretized grid
    double incoherent_trace = 0.0; // Tr(rho_bar^2), numeric
    double cross_term = 0.0;       // <phi_bar| rho_bar |phi_bar>
    bool grid_warning = false;     // doubling changed the result by >= 2%
};

struct EnsembleAngular {
    AngularDistribution coherent;
    AngularDistribution incoherent;
    double escape = 0.0; // off-forward emission probability, = eps
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    int samples_used = 0;
    int samples_failed = 0;
};

struct MultiphotonReport {
    double pure_weight = 0.0;  // (1 - eps)^M
    double purity_bound = 0.0; // (1 - eps)^{2M}
    bool low_excitation_warning = false; // M/N > 0.1
};

// chi_en = (N - 1) / (2 (k_L L)^2).
double optical_thickness(int n, double kl_cloud_size);

MixedPhotonState mixed_photon_state(int n, double kl_cloud_size,
                                    int radial_points = 2001);

EnsembleAngular ensemble_angular(const MixedPhotonState &state,
                                 const AngularGrid &grid,
                                 const Vec3 &laser_dir = Vec3::UnitZ());

// Purity both in closed form and by direct quadrature of the discretized
// density matrix; the angular double sum is doubled in resolution until
// it moves by less than 2%.
PurityReport purity(const MixedPhotonState &state, int n_theta = 0,
                    int n_phi = 0);

MultiphotonReport multiphoton_report(int photons, double chi, int atom_count);

// Slow-motion limit: freeze positions per sample, evaluate, average.
// Per-sample seeds are derived from the base seed; failures are skipped
// and counted.
MonteCarloEstimate slow_motion_average(
    const std::function<double(const AtomArray &)> &observable,
    const EnsembleSpec &spec, int samples, std::uint64_t seed);

} // namespace radiant
