// Acceptance gate: one line per criterion, exit code = number of failures.

#include "radiant/coupling.hpp"
#include "radiant/emission.hpp"
#include "radiant/ensemble.hpp"
#include "radiant/geometry.hpp"
#include "radiant/modes.hpp"
#include "radiant/parallel.hpp"
#include "radiant/rng.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace radiant;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

LatticeSpec chain_spec(int n, double kd) {
    LatticeSpec spec;
    spec.dimensionality = 1;
    spec.counts = {1, 1, n};
    spec.spacing = kd;
    return spec;
}

LatticeSpec cubic_spec(int nx, double kd) {
    LatticeSpec spec;
    spec.dimensionality = 3;
    spec.counts = {nx, nx, nx};
    spec.spacing = kd;
    return spec;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// --- 1. sum rules over random geometries ---------------------------------
Outcome criterion_sum_rules() {
    Outcome o;
    double worst_rate = 0.0, worst_shift = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(1000 + static_cast<std::uint64_t>(trial));
        const int n = 2 + static_cast<int>(rng.next_u64() % 49);
        AtomArray atoms;
        if (trial % 2 == 0) {
            const double kd = 0.3 * M_PI + 2.7 * M_PI * rng.next_double();
            for (int i = 0; i < n; ++i)
                atoms.positions.push_back(Vec3(0, 0, i * kd));
        } else {
            EnsembleSpec spec;
            spec.atom_count = n;
            spec.cloud_size = 2.0 + 18.0 * rng.next_double();
            spec.seed = rng.next_u64();
            atoms = sample_ensemble_positions(spec);
        }
        const SumRuleReport r =
            sum_rule_report(diagonalize(coupling_fixed(atoms, Vec3::UnitZ())));
        worst_rate = std::max(worst_rate, r.rate_residual);
        worst_shift = std::max(worst_shift, r.shift_residual);
    }
    o.pass = worst_rate <= 1e-9 && worst_shift <= 1e-9;
    o.detail = "max residuals " + num(worst_rate) + " / " + num(worst_shift) +
               " over 50 geometries (tol 1e-9)";
    return o;
}

// --- 2. exact rates vs the 1D ladder after labelling ---------------------
Outcome criterion_rate_ladder() {
    Outcome o;
    const LatticeSpec spec = chain_spec(20, 0.4 * M_PI);
    const AtomArray atoms = build_lattice(spec);
    const ModeDecomposition d =
        diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
    const auto labels = label_modes(d, wavevector_grid(spec), atoms);

    int agree = 0;
    bool window_ok = true;
    for (int k = 0; k < 20; ++k) {
        const double exact = d.rate(k);
        const double predicted =
            predict_1d(spec, labels[static_cast<std::size_t>(k)][2]).rate;
        if ((exact > 0.5) == (predicted > 0.5)) ++agree;
        // The ladder predicts chi for superradiant bulk modes but chi/2 at the
        // two region edges, so each mode is held to its own predicted rate.
        if (predicted > 0.5 &&
            (exact < 0.5 * predicted || exact > 1.5 * predicted))
            window_ok = false;
    }
    o.pass = agree >= 16 && window_ok;
    o.detail = "classification agreement " + std::to_string(agree) +
               "/20 (need >= 16), superradiant window " +
               (window_ok ? "ok" : "violated");
    return o;
}

// --- 3. forward-cone probability staircase -------------------------------
Outcome criterion_forward_staircase() {
    Outcome o;
    const double lambdas[] = {0.8, 1.0, 1.5, 2.5, 5.0};
    const double expected[] = {0.2, 0.2, 1.0 / 3.0, 1.0, 1.0};
    std::ostringstream detail;
    for (int i = 0; i < 5; ++i) {
        const LatticeSpec spec = chain_spec(100, 2.0 * M_PI / lambdas[i]);
        const auto peaks = bragg_decompose(spec, Vec3::UnitZ(), {0, 0, 0});
        double forward = 0.0;
        for (const auto &p : peaks)
            if (p.exists && std::abs(p.cone_cos - 1.0) < 1e-9)
                forward += p.probability;
        const bool ok = std::abs(forward - expected[i]) <= 0.05 * expected[i];
        if (!ok) o.pass = false;
        detail << (i ? ", " : "") << num(lambdas[i]) << ": " << num(forward)
               << (ok ? "" : "!=") << (ok ? "" : num(expected[i]));
    }
    o.detail = "p0 by quadrature {" + detail.str() + "} (tol 5%)";
    return o;
}

// --- 4. symmetric-mode rate staircase ------------------------------------
Outcome criterion_rate_staircase() {
    Outcome o;
    const double lambdas[] = {0.8, 1.0, 1.5, 2.5, 5.0};
    std::ostringstream detail;
    const AngularGrid grid = AngularGrid::product(2048, 8);
    for (int i = 0; i < 5; ++i) {
        const double l = lambdas[i];
        const LatticeSpec spec = chain_spec(100, 2.0 * M_PI / l);
        const AngularDistribution dist =
            angular_distribution_planewave(spec, Vec3::UnitZ(), {0, 0, 0}, grid);
        const double rate = dist.integral();
        const double expected =
            l / 4.0 + (l / 2.0) * static_cast<int>(2.0 / l * (1.0 + 1e-12));
        const bool ok = std::abs(rate - expected) <= 0.05 * expected;
        if (!ok) o.pass = false;
        detail << (i ? ", " : "") << num(l) << ": " << num(rate)
               << (ok ? "" : "!=") << (ok ? "" : num(expected));
    }
    o.detail = "rate by quadrature {" + detail.str() + "} (tol 5%)";
    return o;
}

// --- 5. 3D directional regime --------------------------------------------
Outcome criterion_directional_3d() {
    Outcome o;
    const LatticeSpec spec = cubic_spec(8, 2.0 * M_PI / 2.5);
    const double chi = 8.0 * 1.25 * 1.25 / std::sqrt(M_PI);
    const AngularGrid grid = AngularGrid::product(768, 256);
    const AngularDistribution dist =
        angular_distribution_planewave(spec, Vec3::UnitZ(), {0, 0, 0}, grid);
    const double rate = dist.integral();
    const bool rate_ok = std::abs(rate - chi) <= 0.25 * chi;

    std::size_t peak = 0;
    for (std::size_t i = 0; i < dist.values.size(); ++i)
        if (dist.values[i] > dist.values[peak]) peak = i;
    const double theta_peak = grid.node_theta(peak);
    const double dtheta = 1.0 / (spec.spacing * 8);
    const bool dir_ok = theta_peak <= dtheta;

    o.pass = rate_ok && dir_ok;
    o.detail = "rate " + num(rate) + " vs chi_3D " + num(chi) +
               " (tol 25%), peak at theta " + num(theta_peak) +
               " (need <= " + num(dtheta) + ")";
    return o;
}

// --- 6. short-wavelength escape probability ------------------------------
Outcome criterion_escape_3d() {
    Outcome o;
    const LatticeSpec spec = cubic_spec(8, 2.0 * M_PI / 0.4);
    const double chi = 8.0 * 0.2 * 0.2 / std::sqrt(M_PI);
    const AngularGrid grid = AngularGrid::product(2048, 64);
    const AngularDistribution dist =
        angular_distribution_planewave(spec, Vec3::UnitZ(), {0, 0, 0}, grid);
    std::vector<double> forward_terms(dist.values.size(), 0.0);
    std::vector<double> total_terms(dist.values.size(), 0.0);
    const double theta_c = 0.35; // encloses the forward diffraction peak
    for (std::size_t i = 0; i < dist.values.size(); ++i) {
        const double t = grid.node_weight(i) * dist.values[i];
        total_terms[i] = t;
        if (grid.node_theta(i) < theta_c) forward_terms[i] = t;
    }
    const double total = pairwise_sum(total_terms);
    const double forward = pairwise_sum(forward_terms);
    const double escape = 1.0 - forward / total;
    const double expected = 1.0 / (1.0 + chi);
    o.pass = std::abs(escape - expected) <= 0.25 * expected;
    o.detail = "escape " + num(escape) + " vs 1/(1+chi_3D) " + num(expected) +
               " (tol 25%)";
    return o;
}

// --- 7. ensemble eigen-algebra -------------------------------------------
Outcome criterion_ensemble_algebra() {
    Outcome o;
    std::ostringstream detail;
    {
        const int n = 201;
        const double kl_l = 10.0;
        const double chi = (n - 1) / (2.0 * kl_l * kl_l);
        const ModeDecomposition d = diagonalize(coupling_ensemble(n, kl_l));
        const double j0_err =
            std::abs(d.eigenvalues[0].real() - (chi + 1.0) / 2.0);
        double deg_err = 0.0;
        const double deg = 0.5 * (1.0 - 1.0 / (2.0 * kl_l * kl_l));
        for (int k = 1; k < n; ++k)
            deg_err = std::max(deg_err,
                               std::abs(d.eigenvalues[k].real() - deg));
        if (j0_err > 1e-12 || deg_err > 1e-12) o.pass = false;
        detail << "numeric (201,10): J0 err " << num(j0_err)
               << ", degenerate err " << num(deg_err);
    }
    {
        const MixedPhotonState s = mixed_photon_state(50001, 50.0);
        const double err = std::abs(s.j0 - (s.chi + 1.0) / 2.0);
        if (err > 1e-12 || std::abs(s.chi - 10.0) > 1e-12) o.pass = false;
        detail << "; analytic (50001,50): J0 err " << num(err);
    }
    o.detail = detail.str() + " (tol 1e-12)";
    return o;
}

// --- 8. purity ------------------------------------------------------------
Outcome criterion_purity() {
    Outcome o;
    const MixedPhotonState s = mixed_photon_state(50001, 50.0);
    const PurityReport p = purity(s);
    const double expected = (10.0 / 11.0) * (10.0 / 11.0);
    const bool numeric_ok = std::abs(p.numeric - expected) <= 0.04;
    const bool trace_ok =
        std::abs(p.incoherent_trace - 2.0e-4) <= 0.05 * 2.0e-4;
    o.pass = numeric_ok && trace_ok;
    o.detail = "Tr(rho^2) " + num(p.numeric) + " vs " + num(expected) +
               " (tol 0.04); Tr(rho_bar^2) " + num(p.incoherent_trace) +
               " vs 2.0e-4 (tol 5%)";
    return o;
}

// --- 9. width scalings -----------------------------------------------------
Outcome criterion_width_scalings() {
    Outcome o;
    const AngularGrid grid = AngularGrid::product(4096, 8);
    auto chain_width = [&](int n) {
        const LatticeSpec spec = chain_spec(n, 0.4 * M_PI);
        return beam_width(
            angular_distribution_planewave(spec, Vec3::UnitZ(), {0, 0, 0}, grid));
    };
    const double ratio_chain = chain_width(50) / chain_width(200);
    const bool chain_ok = std::abs(ratio_chain - 2.0) <= 0.15 * 2.0;

    auto cloud_width = [&](double kl_l) {
        const MixedPhotonState s =
            mixed_photon_state(1 + static_cast<int>(20.0 * kl_l * kl_l), kl_l);
        return beam_width(ensemble_angular(s, grid).coherent);
    };
    const double ratio_cloud = cloud_width(25.0) / cloud_width(50.0);
    const bool cloud_ok = std::abs(ratio_cloud - 2.0) <= 0.15 * 2.0;

    o.pass = chain_ok && cloud_ok;
    o.detail = "chain FWHM ratio N 50->200: " + num(ratio_chain) +
               "; cloud FWHM ratio k_L L 25->50: " + num(ratio_cloud) +
               " (both vs 2, tol 15%)";
    return o;
}

// --- 10. ten-ion directionality -------------------------------------------
Outcome criterion_ion_chain() {
    Outcome o;
    const double kd_av = 0.8 * M_PI;
    const AtomArray atoms = solve_ion_chain_equilibrium(10, kd_av);
    const ModeDecomposition d =
        diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
    ComplexVector psi =
        ComplexVector::Constant(10, std::complex<double>(1.0, 0.0));
    psi /= psi.norm();
    const AngularGrid grid = AngularGrid::product(1024, 16);
    const AngularDistribution dist =
        angular_distribution_exact(d, atoms, Vec3::UnitZ(), psi, grid);
    const double theta_c = 3.0 / std::sqrt(kd_av * 10.0);
    std::vector<double> forward_terms(dist.values.size(), 0.0);
    for (std::size_t i = 0; i < dist.values.size(); ++i)
        if (grid.node_theta(i) < theta_c)
            forward_terms[i] = grid.node_weight(i) * dist.values[i];
    const double forward = pairwise_sum(forward_terms);
    const double total = dist.integral();
    o.pass = forward / total >= 0.5;
    o.detail = num(100.0 * forward / total) +
               "% of emission within theta < " + num(theta_c) +
               " (need >= 50%)";
    return o;
}

// --- 11. oracle equivalences ----------------------------------------------
Outcome criterion_oracles() {
    Outcome o;
    double worst_evolution = 0.0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        EnsembleSpec espec;
        espec.atom_count = 10 + static_cast<int>(seed);
        espec.cloud_size = 6.0;
        espec.seed = 40 + seed;
        const AtomArray atoms = sample_ensemble_positions(espec);
        const CouplingMatrix j = coupling_fixed(atoms, Vec3::UnitZ());
        const ModeDecomposition d = diagonalize(j);
        ComplexVector b0(atoms.size());
        Rng rng(seed);
        for (int i = 0; i < atoms.size(); ++i)
            b0[i] = std::complex<double>(rng.next_double() - 0.5,
                                         rng.next_double() - 0.5);
        b0 /= b0.norm();
        for (double t : {0.5, 2.0}) {
            const ComplexMatrix expm = (-t * j.entries).exp();
            ComplexVector via = d.modes_inv * b0;
            for (int k = 0; k < atoms.size(); ++k)
                via[k] *= std::exp(-t * d.eigenvalues[k]);
            via = d.modes * via;
            worst_evolution = std::max(
                worst_evolution, (expm * b0 - via).cwiseAbs().maxCoeff());
        }
    }
    const bool evolution_ok = worst_evolution <= 1e-8;

    // Production Gauss-Legendre grid vs a 10x-refined midpoint Riemann grid.
    double worst_quadrature = 0.0;
    const AngularGrid production = AngularGrid::product(128, 32);
    AngularGrid riemann;
    riemann.n_theta = 1280;
    riemann.n_phi = 320;
    riemann.phi_w = 2.0 * M_PI / riemann.n_phi;
    for (int t = 0; t < riemann.n_theta; ++t) {
        const double th = (t + 0.5) * M_PI / riemann.n_theta;
        riemann.theta.push_back(th);
        riemann.ctheta_w.push_back(std::sin(th) * M_PI / riemann.n_theta);
    }
    for (int p = 0; p < riemann.n_phi; ++p)
        riemann.phi.push_back(p * riemann.phi_w);

    for (int instance = 0; instance < 3; ++instance) {
        AtomArray atoms;
        if (instance == 0) {
            atoms = build_lattice(chain_spec(8, 0.4 * M_PI));
        } else if (instance == 1) {
            EnsembleSpec espec;
            espec.atom_count = 12;
            espec.cloud_size = 4.0;
            espec.seed = 3;
            atoms = sample_ensemble_positions(espec);
        } else {
            atoms = solve_ion_chain_equilibrium(6, 0.8 * M_PI);
        }
        const ModeDecomposition d =
            diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
        const SpinWave wave = spinwave_state(d, 0);
        const double a = angular_distribution_exact(d, atoms, Vec3::UnitZ(),
                                                    wave.coefficients,
                                                    production)
                             .integral();
        const double b = angular_distribution_exact(d, atoms, Vec3::UnitZ(),
                                                    wave.coefficients, riemann)
                             .integral();
        worst_quadrature = std::max(worst_quadrature, std::abs(a - b));
    }
    const bool quadrature_ok = worst_quadrature <= 1e-4;

    o.pass = evolution_ok && quadrature_ok;
    o.detail = "evolution max dev " + num(worst_evolution) +
               " (tol 1e-8); quadrature max dev " + num(worst_quadrature) +
               " (tol 1e-4)";
    return o;
}

} // namespace

int main() {
    struct Entry {
        const char *name;
        std::function<Outcome()> fn;
    };
    const Entry entries[] = {
        {"sum rules over 50 random geometries", criterion_sum_rules},
        {"N=20 chain rate ladder classification", criterion_rate_ladder},
        {"forward-probability staircase (N=100)", criterion_forward_staircase},
        {"symmetric-mode rate staircase (N=100)", criterion_rate_staircase},
        {"3D directional regime (8^3, lambda=2.5 d0)", criterion_directional_3d},
        {"3D escape probability (8^3, lambda=0.4 d0)", criterion_escape_3d},
        {"ensemble eigen-algebra", criterion_ensemble_algebra},
        {"purity at chi_en=10, k_L L=50", criterion_purity},
        {"beam-width scalings", criterion_width_scalings},
        {"ten-ion forward directionality", criterion_ion_chain},
        {"oracle equivalences", criterion_oracles},
    };

    int failures = 0;
    int index = 0;
    for (const auto &entry : entries) {
        ++index;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = entry.fn();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::printf("criterion %2d: %s — %s — %s [%.2fs]\n", index,
                    o.pass ? "PASS" : "FAIL", entry.name, o.detail.c_str(),
                    seconds);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures > 0)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
