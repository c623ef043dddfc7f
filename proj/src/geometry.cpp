#include "radiant/geometry.hpp"

#include "radiant/rng.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace radiant {

namespace {
constexpr long long kMaxAtoms = 10'000'000;
}

void LatticeSpec::validate() const {
    if (dimensionality != 1 && dimensionality != 3)
        throw std::invalid_argument("lattice dimensionality must be 1 or 3");
    long long n = 1;
    for (int c : counts) {
        if (c < 1) throw std::invalid_argument("lattice counts must be >= 1");
        n *= c;
    }
    if (n > kMaxAtoms)
        throw std::invalid_argument("lattice atom count exceeds resource guard");
    if (!(spacing > 0.0))
        throw std::invalid_argument("lattice spacing k_L*d0 must be > 0");
    if (dimensionality == 1 && (counts[0] > 1 || counts[1] > 1))
        throw std::invalid_argument("1D lattice must extend along z only");
    for (const auto &a : axes)
        if (std::abs(a.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("lattice axes must be unit vectors");
}

double AtomArray::min_pair_distance() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            m = std::min(m, (positions[i] - positions[j]).norm());
    return m;
}

AtomArray build_lattice(const LatticeSpec &spec) {
    spec.validate();
    AtomArray out;
    out.source = AtomSource::Lattice;
    out.positions.reserve(static_cast<std::size_t>(spec.atom_count()));
    for (int ix = 0; ix < spec.counts[0]; ++ix)
        for (int iy = 0; iy < spec.counts[1]; ++iy)
            for (int iz = 0; iz < spec.counts[2]; ++iz) {
                const double cx = (ix - 0.5 * (spec.counts[0] - 1)) * spec.spacing;
                const double cy = (iy - 0.5 * (spec.counts[1] - 1)) * spec.spacing;
                const double cz = (iz - 0.5 * (spec.counts[2] - 1)) * spec.spacing;
                out.positions.push_back(cx * spec.axes[0] + cy * spec.axes[1] +
                                        cz * spec.axes[2]);
            }
    return out;
}

std::vector<double> ion_chain_coordinates(int n) {
    if (n < 2) throw std::invalid_argument("ion chain needs at least 2 ions");
    // Uniform initial guess; the length scale of the equilibrium chain
    // grows slowly with N.
    std::vector<double> u(n);
    const double d = 2.0 * std::pow(static_cast<double>(n), -0.4) + 0.5;
    for (int i = 0; i < n; ++i) u[i] = (i - 0.5 * (n - 1)) * d;

    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(u.data(), n);
    auto gradient = [n](const Eigen::VectorXd &v) {
        Eigen::VectorXd g = v;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double d = v[i] - v[j];
                g[i] -= (d > 0 ? 1.0 : -1.0) / (d * d);
            }
        return g;
    };

    const int max_iter = 200;
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd g = gradient(x);
        if (g.lpNorm<Eigen::Infinity>() <= 1e-11) {
            converged = true;
            break;
        }
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            h(i, i) = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double w = 2.0 / std::pow(std::abs(x[i] - x[j]), 3);
                h(i, i) += w;
                h(i, j) -= w;
            }
        }
        Eigen::VectorXd step = h.ldlt().solve(g);
        // Backtrack until the ion ordering is preserved and the residual drops.
        double alpha = 1.0;
        const double g0 = g.norm();
        for (int back = 0; back < 60; ++back) {
            Eigen::VectorXd trial = x - alpha * step;
            bool ordered = true;
            for (int i = 0; i + 1 < n; ++i)
                if (trial[i] >= trial[i + 1]) ordered = false;
            if (ordered && gradient(trial).norm() < g0) {
                x = trial;
                break;
            }
            alpha *= 0.5;
        }
    }
    if (!converged)
        throw std::runtime_error("ion chain equilibrium did not converge");
    return std::vector<double>(x.data(), x.data() + n);
}

AtomArray solve_ion_chain_equilibrium(int n, double avg_spacing) {
    if (!(avg_spacing > 0.0))
        throw std::invalid_argument("average spacing must be > 0");
    std::vector<double> u = ion_chain_coordinates(n);
    const double mean_gap = (u.back() - u.front()) / (n - 1);
    const double scale = avg_spacing / mean_gap;
    AtomArray out;
    out.source = AtomSource::IonChain;
    out.positions.reserve(static_cast<std::size_t>(n));
    for (double v : u) out.positions.push_back(Vec3(0.0, 0.0, v * scale));
    return out;
}

AtomArray sample_ensemble_positions(const EnsembleSpec &spec) {
    if (spec.atom_count < 1)
        throw std::invalid_argument("ensemble atom count must be >= 1");
    if (!(spec.cloud_size > 0.0))
        throw std::invalid_argument("ensemble cloud size k_L*L must be > 0");
    AtomArray out;
    out.source = AtomSource::SampledEnsemble;
    out.positions.reserve(static_cast<std::size_t>(spec.atom_count));
    Rng rng(spec.seed);
    const double sigma = spec.cloud_size / std::sqrt(2.0); // per-axis std of rho(r)
    for (int i = 0; i < spec.atom_count; ++i) {
        Vec3 r;
        for (int a = 0; a < 3; ++a) r[a] = sigma * rng.next_normal();
        out.positions.push_back(r);
    }
    return out;
}

WavevectorGrid wavevector_grid(const LatticeSpec &spec) {
    spec.validate();
    WavevectorGrid grid;
    std::array<std::vector<int>, 3> ranges;
    for (int a = 0; a < 3; ++a) {
        const int na = spec.counts[a];
        const int lo = (na % 2 == 0) ? -na / 2 : -(na - 1) / 2;
        const int hi = (na % 2 == 0) ? na / 2 - 1 : (na - 1) / 2;
        for (int v = lo; v <= hi; ++v) ranges[a].push_back(v);
    }
    const double g0 = 2.0 * M_PI / spec.spacing;
    for (int nx : ranges[0])
        for (int ny : ranges[1])
            for (int nz : ranges[2]) {
                grid.indices.push_back({nx, ny, nz});
                Vec3 k = g0 * (static_cast<double>(nx) / spec.counts[0] * spec.axes[0] +
                               static_cast<double>(ny) / spec.counts[1] * spec.axes[1] +
                               static_cast<double>(nz) / spec.counts[2] * spec.axes[2]);
                grid.wavevectors.push_back(k);
            }
    return grid;
}

AtomArray load_positions(std::istream &in) {
    AtomArray out;
    out.source = AtomSource::File;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z))
            throw std::runtime_error("malformed position line " +
                                     std::to_string(lineno));
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw std::runtime_error("non-finite position at line " +
                                     std::to_string(lineno));
        out.positions.push_back(Vec3(x, y, z));
    }
    if (out.positions.empty())
        throw std::runtime_error("position file contains no atoms");
    return out;
}

AtomArray load_positions_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open position file: " + path);
    return load_positions(f);
}

void save_positions(std::ostream &out, const AtomArray &atoms) {
    out.precision(17);
    for (const auto &r : atoms.positions)
        out << r.x() << ' ' << r.y() << ' ' << r.z() << '\n';
}

} // namespace radiant
