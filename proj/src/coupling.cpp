#include "radiant/coupling.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace radiant {

namespace {
constexpr double kEps0 = 8.8541878128e-12; // F/m
constexpr double kSpeedOfLight = 2.99792458e8; // m/s
constexpr double kCoincidenceTol = 1e-9;
} // namespace

double gamma_bar(const PhysicalParams &params) {
    if (params.detuning == 0.0)
        throw std::invalid_argument(
            "gamma_bar: resonant branch (Delta = 0) is not covered by the "
            "far-detuned rate formula");
    if (!(params.laser_omega > 0.0))
        throw std::invalid_argument("gamma_bar: omega_L must be > 0");
    const double drive = params.rabi / (2.0 * params.detuning);
    return drive * drive * std::pow(params.laser_omega, 3) *
           params.dipole * params.dipole /
           (3.0 * M_PI * kEps0 * std::pow(kSpeedOfLight, 3));
}

CouplingMatrix coupling_fixed(const AtomArray &atoms, const Vec3 &laser_dir) {
    const int n = atoms.size();
    if (n < 1) throw std::invalid_argument("coupling_fixed: empty atom array");
    if (std::abs(laser_dir.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("coupling_fixed: laser direction must be unit");

    CouplingMatrix out;
    out.provenance = CouplingProvenance::Fixed;
    out.parameter = n > 1 ? atoms.min_pair_distance() : 0.0;
    out.entries.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.entries(i, i) = std::complex<double>(0.5, 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Vec3 d = atoms.positions[i] - atoms.positions[j];
            const double x = d.norm(); // k_L |r_i - r_j|
            if (x < kCoincidenceTol)
                throw std::invalid_argument(
                    "coupling_fixed: coincident atoms (k_L r < 1e-9)");
            const std::complex<double> kernel(std::sin(x) / x,
                                              -std::cos(x) / x);
            const double phase = laser_dir.dot(d);
            const std::complex<double> pw(std::cos(phase), -std::sin(phase));
            out.entries(i, j) = 0.5 * pw * kernel;
            out.entries(j, i) = 0.5 * std::conj(pw) * kernel;
        }
    }
    return out;
}

CouplingMatrix coupling_ensemble(int n, double kl_cloud_size) {
    if (n < 1) throw std::invalid_argument("coupling_ensemble: N must be >= 1");
    if (!(kl_cloud_size > 0.0))
        throw std::invalid_argument("coupling_ensemble: k_L L must be > 0");
    CouplingMatrix out;
    out.provenance = CouplingProvenance::Ensemble;
    out.parameter = kl_cloud_size;
    const double beta = 1.0 / (4.0 * kl_cloud_size * kl_cloud_size);
    out.entries = ComplexMatrix::Constant(n, n, std::complex<double>(beta, 0.0));
    out.entries.diagonal().setConstant(std::complex<double>(0.5, 0.0));
    return out;
}

void dump_coupling_csv(std::ostream &out, const CouplingMatrix &m) {
    out << "i,j,re,im\n";
    out.precision(17);
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            out << i << ',' << j << ',' << m.entries(i, j).real() << ','
                << m.entries(i, j).imag() << '\n';
}

} // namespace radiant
