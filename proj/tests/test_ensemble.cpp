#include <doctest.h>

#include "radiant/coupling.hpp"
#include "radiant/ensemble.hpp"

#include <cmath>

using namespace radiant;

TEST_CASE("optical thickness algebra") {
    CHECK(optical_thickness(10001, 50.0) == doctest::Approx(2.0));
    CHECK(optical_thickness(1, 10.0) == doctest::Approx(0.0));
    CHECK_THROWS(optical_thickness(0, 1.0));
    CHECK_THROWS(optical_thickness(10, 0.0));
}

TEST_CASE("mixed photon state parameters and radial profile") {
    const MixedPhotonState s = mixed_photon_state(801, 20.0);
    CHECK(s.chi == doctest::Approx(1.0));
    CHECK(s.epsilon == doctest::Approx(0.5));
    CHECK(s.j0 == doctest::Approx(1.0));
    CHECK_FALSE(s.radial_resolution_warning);

    // Lorentzian of half width j0, normalized on the trapezoid grid.
    double total = 0.0;
    const double dx = s.omega[1] - s.omega[0];
    std::size_t imax = 0;
    for (std::size_t i = 0; i < s.radial_profile.size(); ++i) {
        const double w =
            (i == 0 || i + 1 == s.radial_profile.size()) ? 0.5 * dx : dx;
        total += w * s.radial_profile[i];
        if (s.radial_profile[i] > s.radial_profile[imax]) imax = i;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.omega[imax]) <= dx);

    // Value at omega = j0 is half the peak.
    const std::size_t ihalf =
        imax + static_cast<std::size_t>(std::lround(s.j0 / dx));
    CHECK(s.radial_profile[ihalf] ==
          doctest::Approx(0.5 * s.radial_profile[imax]).epsilon(1e-3));

    // Kernel: unit at coincidence, Gaussian decay in the chord distance.
    CHECK(s.incoherent_kernel(Vec3::UnitZ(), Vec3::UnitZ()) == 1.0);
    const double chord2 = (Vec3::UnitZ() - Vec3::UnitX()).squaredNorm();
    CHECK(s.incoherent_kernel(Vec3::UnitZ(), Vec3::UnitX()) ==
          doctest::Approx(std::exp(-400.0 * chord2 / 4.0)));
}

TEST_CASE("ensemble angular split conserves probability") {
    const MixedPhotonState s = mixed_photon_state(801, 20.0);
    const AngularGrid grid = AngularGrid::product(512, 16);
    const EnsembleAngular a = ensemble_angular(s, grid);
    CHECK(a.escape == doctest::Approx(s.epsilon));
    CHECK(a.coherent.integral() ==
          doctest::Approx(1.0 - s.epsilon).epsilon(1e-12));
    CHECK(a.incoherent.integral() == doctest::Approx(s.epsilon).epsilon(1e-12));
    // The coherent lobe points forward.
    std::size_t imax = 0;
    for (std::size_t i = 0; i < a.coherent.values.size(); ++i)
        if (a.coherent.values[i] > a.coherent.values[imax]) imax = i;
    CHECK(grid.node_theta(imax) < 0.1);
}

TEST_CASE("purity closes on the analytic decomposition") {
    // chi_en = 1 at k_L L = 20: eps = 1/2, Tr(rho_bar^2) = 1/(2 (k_L L)^2).
    const MixedPhotonState s = mixed_photon_state(801, 20.0);
    const PurityReport p = purity(s);
    CHECK(p.formula == doctest::Approx(0.25));
    CHECK(p.incoherent_trace == doctest::Approx(1.0 / 800.0).epsilon(0.03));
    CHECK_FALSE(p.grid_warning);
    CHECK(p.numeric >= p.formula); // Cauchy-Schwarz direction
    CHECK(p.numeric == doctest::Approx(p.formula + 0.25 * p.incoherent_trace +
                                       0.5 * p.cross_term)
                           .epsilon(1e-12));
    CHECK(p.cross_term >= 0.0);
    CHECK(p.cross_term <= 0.05);
}

TEST_CASE("multiphoton weights") {
    const MultiphotonReport r = multiphoton_report(3, 9.0, 1000);
    // eps = 0.1.
    CHECK(r.pure_weight == doctest::Approx(0.729).epsilon(1e-12));
    CHECK(r.purity_bound == doctest::Approx(0.531441).epsilon(1e-12));
    CHECK_FALSE(r.low_excitation_warning);
    CHECK(multiphoton_report(200, 9.0, 1000).low_excitation_warning);
    CHECK(multiphoton_report(1, 9.0, 1000).pure_weight == doctest::Approx(0.9));
    CHECK_THROWS(multiphoton_report(0, 1.0, 10));
}

TEST_CASE("slow-motion average recovers the analytic symmetric rate") {
    // Frozen-position Monte Carlo of J0 = mean row sum of Re J, which in the
    // fast-motion limit equals (chi_en + 1)/2.
    EnsembleSpec spec;
    spec.atom_count = 40;
    spec.cloud_size = 10.0;
    const double chi = (spec.atom_count - 1) / (2.0 * 100.0);

    auto observable = [](const AtomArray &atoms) {
        const CouplingMatrix j = coupling_fixed(atoms, Vec3::UnitZ());
        double acc = 0.0;
        for (int a = 0; a < j.size(); ++a)
            for (int b = 0; b < j.size(); ++b)
                acc += j.entries(a, b).real();
        return acc / j.size();
    };
    const MonteCarloEstimate est =
        slow_motion_average(observable, spec, 400, 77);
    CHECK(est.samples_used == 400);
    CHECK(est.samples_failed == 0);
    const double expect = (chi + 1.0) / 2.0;
    CHECK(std::abs(est.mean - expect) <=
          std::max(5.0 * est.standard_error, 0.05 * expect));

    // Determinism.
    const MonteCarloEstimate again =
        slow_motion_average(observable, spec, 400, 77);
    CHECK(again.mean == est.mean);
    CHECK(again.standard_error == est.standard_error);
}

TEST_CASE("slow-motion average skips failing samples") {
    EnsembleSpec spec;
    spec.atom_count = 5;
    spec.cloud_size = 5.0;
    auto observable = [](const AtomArray &atoms) -> double {
        if (atoms.positions[0].x() > 0.0)
            throw std::runtime_error("synthetic failure");
        return 1.0;
    };
    const MonteCarloEstimate est =
        slow_motion_average(observable, spec, 64, 5);
    CHECK(est.samples_used + est.samples_failed == 64);
    CHECK(est.samples_failed > 0);
    CHECK(est.mean == doctest::Approx(1.0));
}
