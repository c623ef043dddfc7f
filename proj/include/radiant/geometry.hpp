#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace radiant {

using Vec3 = Eigen::Vector3d;

// All lengths are dimensionless, premultiplied by the laser wavenumber k_L.
// All rates downstream are in units of the single-atom rate.

enum class AtomSource { Lattice, IonChain, SampledEnsemble, File };

struct LatticeSpec {
    int dimensionality = 1;                     // 1 or 3
    std::array<int, 3> counts = {1, 1, 1};      // atoms per axis (x, y, z)
    double spacing = 1.0;                       // k_L * d0
    // Axis orientation; default chain along z.
    std::array<Vec3, 3> axes = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};

    int atom_count() const { return counts[0] * counts[1] * counts[2]; }
    void validate() const; // throws std::invalid_argument
};

struct AtomArray {
    std::vector<Vec3> positions; // k_L * r_j
    AtomSource source = AtomSource::Lattice;

    int size() const { return static_cast<int>(positions.size()); }
    double min_pair_distance() const;
};

struct WavevectorGrid {
    std::vector<std::array<int, 3>> indices;  // n
    std::vector<Vec3> wavevectors;            // K_n in units of k_L

    int size() const { return static_cast<int>(indices.size()); }
};

struct EnsembleSpec {
    int atom_count = 1;
    double cloud_size = 1.0; // k_L * L
    std::uint64_t seed = 0;
};

// Square lattice centered at the origin; N = prod(counts) atoms.
AtomArray build_lattice(const LatticeSpec &spec);

// Dimensionless Coulomb-chain equilibrium: minimizes
//   V = sum_i u_i^2/2 + sum_{i<j} 1/|u_i - u_j|
// by Newton iteration, returning sorted positions along z with residual
// force <= 1e-10. The result is scaled so that the mean nearest-neighbour
// gap equals avg_spacing (k_L * d0^av).
AtomArray solve_ion_chain_equilibrium(int n, double avg_spacing = 1.0);

// Raw equilibrium coordinates in trap units (unscaled), for testing.
std::vector<double> ion_chain_coordinates(int n);

// N i.i.d. draws from rho(r) = exp(-(r/L)^2) / (pi^{3/2} L^3).
AtomArray sample_ensemble_positions(const EnsembleSpec &spec);

// Periodic-boundary wavevectors K_n = (2 pi / d0) sum_a (n_a/N_a) a_hat,
// n_a in [-N_a/2, N_a/2 - 1] for even N_a, symmetric range for odd N_a.
WavevectorGrid wavevector_grid(const LatticeSpec &spec);

// Plain-text position files: three whitespace-separated fields per line
// (k_L x, k_L y, k_L z), '#' starts a comment.
AtomArray load_positions(std::istream &in);
AtomArray load_positions_file(const std::string &path);
void save_positions(std::ostream &out, const AtomArray &atoms);

} // namespace radiant
