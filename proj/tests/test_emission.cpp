#include <doctest.h>

#include "radiant/coupling.hpp"
#include "radiant/emission.hpp"
#include "radiant/modes.hpp"

#include <cmath>
#include <complex>
#include <sstream>

using namespace radiant;

namespace {

LatticeSpec chain_spec(int n, double kd) {
    LatticeSpec spec;
    spec.dimensionality = 1;
    spec.counts = {1, 1, n};
    spec.spacing = kd;
    return spec;
}

} // namespace

TEST_CASE("single atom emits isotropically") {
    AtomArray atoms;
    atoms.positions.push_back(Vec3::Zero());
    const ModeDecomposition d =
        diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
    ComplexVector psi(1);
    psi[0] = 1.0;
    const AngularGrid grid = AngularGrid::product(32, 16);
    const AngularDistribution dist =
        angular_distribution_exact(d, atoms, Vec3::UnitZ(), psi, grid);
    for (double v : dist.values)
        CHECK(v == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
    CHECK(dist.integral() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact distribution is normalized and non-negative") {
    const LatticeSpec spec = chain_spec(10, 0.4 * M_PI);
    const AtomArray atoms = build_lattice(spec);
    const ModeDecomposition d =
        diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
    const AngularGrid grid = AngularGrid::product(256, 32);
    for (int n : {0, 3, 9}) {
        const SpinWave wave = spinwave_state(d, n);
        const AngularDistribution dist = angular_distribution_exact(
            d, atoms, Vec3::UnitZ(), wave.coefficients, grid);
        for (double v : dist.values) CHECK(v >= -1e-12);
        CHECK(dist.integral() == doctest::Approx(1.0).epsilon(2e-3));
    }
}

TEST_CASE("plane-wave pattern integrates to the spin-wave decay rate") {
    const LatticeSpec spec = chain_spec(20, 0.4 * M_PI);
    const AtomArray atoms = build_lattice(spec);
    const CouplingMatrix j = coupling_fixed(atoms, Vec3::UnitZ());
    const WavevectorGrid kgrid = wavevector_grid(spec);
    const AngularGrid grid = AngularGrid::product(512, 16);

    for (int g = 0; g < kgrid.size(); ++g) {
        // Quadratic-form oracle: Gamma_n = 2 Re <v|J|v> for the plane wave.
        ComplexVector v(20);
        for (int l = 0; l < 20; ++l) {
            const double phase =
                kgrid.wavevectors[static_cast<std::size_t>(g)].dot(
                    atoms.positions[static_cast<std::size_t>(l)]);
            v[l] = std::complex<double>(std::cos(phase), std::sin(phase)) /
                   std::sqrt(20.0);
        }
        const std::complex<double> q = v.adjoint() * (j.entries * v);
        const double expect = 2.0 * q.real();

        const AngularDistribution dist = angular_distribution_planewave(
            spec, Vec3::UnitZ(), kgrid.indices[static_cast<std::size_t>(g)],
            grid);
        const RateEstimate est = rate_from_normalization(dist);
        CHECK(est.rate == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("1D rate ladder and forward probability") {
    SUBCASE("lambda = 5 d0, N = 20") {
        const LatticeSpec spec = chain_spec(20, 0.4 * M_PI);
        CHECK(predict_1d(spec, 0).rate == doctest::Approx(1.25));
        CHECK(predict_1d(spec, -4).rate == doctest::Approx(2.5));
        CHECK(predict_1d(spec, -8).rate == doctest::Approx(1.25));
        CHECK(predict_1d(spec, 2).rate == doctest::Approx(0.0));
        CHECK(predict_1d(spec, -9).rate == doctest::Approx(0.0));
        CHECK(predict_1d(spec, 0).forward_probability == doctest::Approx(1.0));
        CHECK(predict_1d(spec, 0).beam_width ==
              doctest::Approx(1.0 / std::sqrt(0.4 * M_PI * 20)));
        CHECK(predict_1d(spec, -4).superradiant);
        CHECK_FALSE(predict_1d(spec, 2).superradiant);
        // The ladder resums to the sum rule.
        double total = 0.0;
        for (const auto &idx : wavevector_grid(spec).indices)
            total += predict_1d(spec, idx[2]).rate;
        CHECK(total == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("closed-form staircase across spacings") {
        struct Point {
            double lambda_over_d0, p0, rate0;
        };
        for (const Point &pt : {Point{0.8, 0.2, 1.0}, Point{1.5, 1.0 / 3.0, 1.125},
                                Point{2.5, 1.0, 0.625}, Point{5.0, 1.0, 1.25}}) {
            const LatticeSpec spec = chain_spec(100, 2.0 * M_PI / pt.lambda_over_d0);
            const PredictedRates p = predict_1d(spec, 0);
            CHECK(p.forward_probability == doctest::Approx(pt.p0).epsilon(1e-12));
            CHECK(p.rate == doctest::Approx(pt.rate0).epsilon(1e-12));
        }
    }
}

TEST_CASE("1D Bragg cones: weights and cone angles") {
    SUBCASE("directional regime keeps only the forward cone") {
        const auto peaks =
            bragg_decompose(chain_spec(20, 0.4 * M_PI), Vec3::UnitZ(), {0, 0, 0});
        double forward = 0.0;
        for (const auto &p : peaks)
            if (p.exists && std::abs(p.cone_cos - 1.0) < 1e-9)
                forward += p.probability;
        CHECK(forward == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("lambda = 0.8 d0: forward edge peak carries 1/5") {
        const auto peaks = bragg_decompose(chain_spec(100, 2.0 * M_PI / 0.8),
                                           Vec3::UnitZ(), {0, 0, 0});
        int interior = 0;
        double forward = -1.0;
        for (const auto &p : peaks) {
            if (!p.exists) continue;
            if (std::abs(p.cone_cos - 1.0) < 1e-9)
                forward = p.probability;
            else
                ++interior;
        }
        CHECK(interior == 2); // cone_cos 0.2 and -0.6
        CHECK(forward == doctest::Approx(0.2).epsilon(0.02));
    }
}

TEST_CASE("3D predictor: directional regime and short-wavelength limit") {
    LatticeSpec spec;
    spec.dimensionality = 3;
    spec.counts = {8, 8, 8};

    SUBCASE("lambda = 2.5 d0 is directional with a forward peak") {
        spec.spacing = 2.0 * M_PI / 2.5;
        const PredictedRates p = predict_3d(spec, Vec3::UnitZ(), {0, 0, 0});
        const double chi = 8.0 * 1.25 * 1.25 / std::sqrt(M_PI);
        CHECK(p.enhancement == doctest::Approx(chi).epsilon(1e-12));
        CHECK(p.peak_exists);
        CHECK(p.rate == doctest::Approx(chi));
        CHECK(p.m_c == std::array<int, 3>{0, 0, 0});
        CHECK(p.peak_direction.z() == doctest::Approx(1.0));
        CHECK(p.beam_width == doctest::Approx(1.0 / (spec.spacing * 8)));
    }
    SUBCASE("lambda = 0.4 d0 symmetric mode: forward scattering limit") {
        spec.spacing = 2.0 * M_PI / 0.4;
        const PredictedRates p = predict_3d(spec, Vec3::UnitZ(), {0, 0, 0});
        const double chi = 8.0 * 0.2 * 0.2 / std::sqrt(M_PI);
        CHECK(p.rate == doctest::Approx(1.0 + chi));
        CHECK(p.escape_probability == doctest::Approx(1.0 / (1.0 + chi)));
    }
}

TEST_CASE("beam width recovers a known Gaussian FWHM") {
    const double sigma = 0.05;
    AngularDistribution dist;
    dist.grid = AngularGrid::product(1024, 8);
    dist.values.assign(dist.grid.size(), 0.0);
    for (std::size_t i = 0; i < dist.grid.size(); ++i) {
        const double th = dist.grid.node_theta(i);
        dist.values[i] = std::exp(-th * th / (2.0 * sigma * sigma));
    }
    const double expect = 2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma;
    CHECK(beam_width(dist) == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("beam width rejects flat distributions") {
    AngularDistribution dist;
    dist.grid = AngularGrid::product(16, 8);
    dist.values.assign(dist.grid.size(), 1.0);
    CHECK_THROWS_AS(beam_width(dist), std::runtime_error);
}

TEST_CASE("photon mode radial half width equals half the decay rate") {
    const LatticeSpec spec = chain_spec(8, 0.4 * M_PI);
    const AtomArray atoms = build_lattice(spec);
    const ModeDecomposition d =
        diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
    const AngularGrid grid = AngularGrid::product(64, 16);
    const PhotonMode mode = photon_mode(d, atoms, Vec3::UnitZ(), 0, grid, 4001);
    CHECK(mode.radial_hwhm == doctest::Approx(d.rate(0) / 2.0).epsilon(0.01));

    // Radial marginal integrates to one on its trapezoid grid.
    double total = 0.0;
    const double dx = mode.omega[1] - mode.omega[0];
    for (std::size_t i = 0; i < mode.radial_marginal.size(); ++i) {
        const double w =
            (i == 0 || i + 1 == mode.radial_marginal.size()) ? 0.5 * dx : dx;
        total += w * mode.radial_marginal[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("propagation validity thresholds") {
    const LatticeSpec spec = chain_spec(4, 0.4 * M_PI);
    const AtomArray atoms = build_lattice(spec);
    const ModeDecomposition d =
        diagonalize(coupling_fixed(atoms, Vec3::UnitZ()));
    const ValidityReport ok = propagation_validity(d, 1e7, 1e-4, 2.4e15);
    CHECK(ok.valid);
    CHECK(ok.shift_ok);
    CHECK(ok.max_ratio < 1e-2);
    const ValidityReport bad = propagation_validity(d, 1e7, 1e3);
    CHECK_FALSE(bad.valid);
    CHECK_THROWS(propagation_validity(d, 0.0, 1.0));
}

TEST_CASE("angular and Bragg CSV schemas") {
    AngularDistribution dist;
    dist.grid = AngularGrid::product(2, 2);
    dist.values.assign(dist.grid.size(), 0.25);
    std::ostringstream a;
    dump_angular_csv(a, dist);
    CHECK(a.str().substr(0, 27) == "theta,phi,weight,intensity\n");

    std::ostringstream b;
    dump_bragg_csv(b, {});
    CHECK(b.str() == "m1,m2,m3,exists,ux,uy,uz,p\n");
}
