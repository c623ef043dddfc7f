#include "radiant/ensemble.hpp"

#include "radiant/parallel.hpp"
#include "radiant/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace radiant {

double MixedPhotonState::incoherent_kernel(const Vec3 &u,
                                           const Vec3 &u_prime) const {
    const double d2 = (u - u_prime).squaredNorm();
    return std::exp(-kl_size * kl_size * d2 / 4.0);
}

double optical_thickness(int n, double kl_cloud_size) {
    if (n < 1) throw std::invalid_argument("optical_thickness: N must be >= 1");
    if (!(kl_cloud_size > 0.0))
        throw std::invalid_argument("optical_thickness: k_L L must be > 0");
    return (n - 1) / (2.0 * kl_cloud_size * kl_cloud_size);
}

MixedPhotonState mixed_photon_state(int n, double kl_cloud_size,
                                    int radial_points) {
    if (radial_points < 3)
        throw std::invalid_argument("mixed_photon_state: radial grid too small");
    MixedPhotonState s;
    s.chi = optical_thickness(n, kl_cloud_size);
    s.epsilon = 1.0 / (1.0 + s.chi);
    s.kl_size = kl_cloud_size;
    s.j0 = 0.5 * (s.chi + 1.0);

    const double span = 40.0 * s.j0;
    const double dx = 2.0 * span / (radial_points - 1);
    s.radial_resolution_warning = dx > s.j0 / 5.0;
    s.omega.resize(static_cast<std::size_t>(radial_points));
    s.radial_profile.resize(static_cast<std::size_t>(radial_points));
    double total = 0.0;
    for (int i = 0; i < radial_points; ++i) {
        const double x = -span + i * dx;
        s.omega[static_cast<std::size_t>(i)] = x;
        const double lorentz = 1.0 / (x * x + s.j0 * s.j0);
        s.radial_profile[static_cast<std::size_t>(i)] = lorentz;
        total += lorentz * ((i == 0 || i == radial_points - 1) ? 0.5 * dx : dx);
    }
    for (auto &v : s.radial_profile) v /= total;
    return s;
}

EnsembleAngular ensemble_angular(const MixedPhotonState &state,
                                 const AngularGrid &grid,
                                 const Vec3 &laser_dir) {
    if (std::abs(laser_dir.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("ensemble_angular: laser direction must be unit");
    EnsembleAngular out;
    out.escape = state.epsilon;
    out.coherent.grid = grid;
    out.coherent.kind = DistributionKind::EnsembleCoherent;
    out.coherent.values.assign(grid.size(), 0.0);
    out.incoherent.grid = grid;
    out.incoherent.kind = DistributionKind::EnsembleIncoherent;
    out.incoherent.values.assign(grid.size(),
                                 state.epsilon / (4.0 * M_PI));

    const double l2 = state.kl_size * state.kl_size;
    std::vector<double> lobe(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double theta = grid.node_theta(i);
        const double phi = grid.node_phi(i);
        const Vec3 u(std::sin(theta) * std::cos(phi),
                     std::sin(theta) * std::sin(phi), std::cos(theta));
        lobe[i] = std::exp(-l2 * (u - laser_dir).squaredNorm() / 2.0);
    }
    std::vector<double> terms(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        terms[i] = grid.node_weight(i) * lobe[i];
    const double norm = pairwise_sum(terms);
    // Coherent weight 1 - eps on the grid, so escape + integral = 1 exactly.
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.coherent.values[i] = (1.0 - state.epsilon) * lobe[i] / norm;
    return out;
}

namespace {

// Angular double integrals of the incoherent component, exploiting the
// phi - phi' shift symmetry of the product grid.
struct AngularMoments {
    double trace_sq = 0.0;   // Tr(rho_a^2), rho_a = kernel / 4 pi
    double cross = 0.0;      // <a| rho_a |a> with a the coherent lobe
};

AngularMoments incoherent_moments(const MixedPhotonState &state, int n_theta,
                                  int n_phi) {
    const AngularGrid g = AngularGrid::product(n_theta, n_phi);
    const double l2 = state.kl_size * state.kl_size;

    std::vector<double> ct(static_cast<std::size_t>(n_theta)),
        st(static_cast<std::size_t>(n_theta));
    for (int t = 0; t < n_theta; ++t) {
        ct[static_cast<std::size_t>(t)] = std::cos(g.theta[static_cast<std::size_t>(t)]);
        st[static_cast<std::size_t>(t)] = std::sin(g.theta[static_cast<std::size_t>(t)]);
    }
    // Normalized coherent angular amplitude around +z (phi independent).
    std::vector<double> amp(static_cast<std::size_t>(n_theta));
    double amp_norm = 0.0;
    for (int t = 0; t < n_theta; ++t) {
        const double d2 = 2.0 * (1.0 - ct[static_cast<std::size_t>(t)]);
        amp[static_cast<std::size_t>(t)] = std::exp(-l2 * d2 / 4.0);
        amp_norm += g.ctheta_w[static_cast<std::size_t>(t)] * 2.0 * M_PI *
                    amp[static_cast<std::size_t>(t)] *
                    amp[static_cast<std::size_t>(t)];
    }
    amp_norm = std::sqrt(amp_norm);
    for (auto &a : amp) a /= amp_norm;

    std::vector<double> trace_rows(static_cast<std::size_t>(n_theta), 0.0);
    std::vector<double> cross_rows(static_cast<std::size_t>(n_theta), 0.0);
    parallel_for(static_cast<std::size_t>(n_theta), [&](std::size_t a) {
        double tr = 0.0, cr = 0.0;
        for (int b = 0; b < n_theta; ++b) {
            const double cc = ct[a] * ct[static_cast<std::size_t>(b)];
            const double ss = st[a] * st[static_cast<std::size_t>(b)];
            double phi_tr = 0.0, phi_cr = 0.0;
            for (int p = 0; p < n_phi; ++p) {
                const double cosg = cc + ss * std::cos(p * g.phi_w);
                const double d2 = 2.0 * (1.0 - cosg);
                phi_tr += std::exp(-l2 * d2 / 2.0);
                phi_cr += std::exp(-l2 * d2 / 4.0);
            }
            const double wb = g.ctheta_w[static_cast<std::size_t>(b)];
            tr += wb * phi_tr;
            cr += wb * phi_cr * amp[static_cast<std::size_t>(b)];
        }
        // The inner phi sum covered the relative angle; restore weights.
        const double wa = g.ctheta_w[a] * 2.0 * M_PI * g.phi_w;
        trace_rows[a] = wa * tr;
        cross_rows[a] = wa * cr * amp[a];
    });
    AngularMoments m;
    const double inv4pi = 1.0 / (4.0 * M_PI);
    m.trace_sq = pairwise_sum(trace_rows) * inv4pi * inv4pi;
    m.cross = pairwise_sum(cross_rows) * inv4pi;
    return m;
}

} // namespace

PurityReport purity(const MixedPhotonState &state, int n_theta, int n_phi) {
    if (n_theta <= 0)
        n_theta = std::max(128, static_cast<int>(std::ceil(8.0 * state.kl_size)));
    if (n_phi <= 0)
        n_phi = std::max(64, static_cast<int>(std::ceil(8.0 * state.kl_size)));

    AngularMoments m = incoherent_moments(state, n_theta, n_phi);
    // Grid-doubling convergence check on the incoherent trace.
    AngularMoments m2 = incoherent_moments(state, 2 * n_theta, 2 * n_phi);
    PurityReport r;
    r.grid_warning =
        std::abs(m2.trace_sq - m.trace_sq) >= 0.02 * std::abs(m2.trace_sq);
    m = m2;

    const double eps = state.epsilon;
    r.formula = (1.0 - eps) * (1.0 - eps);
    r.incoherent_trace = m.trace_sq; // radial part is rank-1, trace 1
    r.cross_term = m.cross;
    r.numeric = r.formula + eps * eps * m.trace_sq +
                2.0 * eps * (1.0 - eps) * m.cross;
    return r;
}

MultiphotonReport multiphoton_report(int photons, double chi, int atom_count) {
    if (photons < 1)
        throw std::invalid_argument("multiphoton_report: M must be >= 1");
    if (atom_count < 1)
        throw std::invalid_argument("multiphoton_report: N must be >= 1");
    const double eps = 1.0 / (1.0 + chi);
    MultiphotonReport r;
    r.pure_weight = std::pow(1.0 - eps, photons);
    r.purity_bound = std::pow(1.0 - eps, 2 * photons);
    r.low_excitation_warning =
        static_cast<double>(photons) / atom_count > 0.1;
    return r;
}

MonteCarloEstimate slow_motion_average(
    const std::function<double(const AtomArray &)> &observable,
    const EnsembleSpec &spec, int samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::invalid_argument("slow_motion_average: samples must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(samples), 0.0);
    std::vector<char> ok(static_cast<std::size_t>(samples), 0);
    Rng base(seed);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
        EnsembleSpec draw = spec;
        draw.seed = base.split(i).next_u64();
        try {
            values[i] = observable(sample_ensemble_positions(draw));
            ok[i] = 1;
        } catch (...) {
            ok[i] = 0;
        }
    });
    MonteCarloEstimate est;
    std::vector<double> used, used_sq;
    used.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (ok[i]) {
            used.push_back(values[i]);
        } else {
            ++est.samples_failed;
        }
    }
    est.samples_used = static_cast<int>(used.size());
    if (est.samples_used == 0)
        throw std::runtime_error("slow_motion_average: every sample failed");
    est.mean = pairwise_sum(used) / est.samples_used;
    used_sq.resize(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) {
        const double d = used[i] - est.mean;
        used_sq[i] = d * d;
    }
    if (est.samples_used > 1)
        est.standard_error = std::sqrt(pairwise_sum(used_sq) /
                                       (est.samples_used *
                                        (est.samples_used - 1.0)));
    return est;
}

} // namespace radiant
