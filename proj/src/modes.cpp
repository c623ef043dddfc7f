#include "radiant/modes.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace radiant {

namespace {

// Deterministic phase: the entry of largest modulus becomes real positive.
void fix_column_phase(ComplexMatrix &m, int col) {
    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < m.rows(); ++i) {
        const double a = std::abs(m(i, col));
        if (a > amax + 1e-15) {
            amax = a;
            imax = i;
        }
    }
    if (amax > 0.0) m.col(col) *= std::conj(m(imax, col)) / amax;
}

} // namespace

ModeDecomposition diagonalize(const CouplingMatrix &coupling) {
    const int n = coupling.size();
    if (n < 1) throw std::invalid_argument("diagonalize: empty matrix");
    if (!coupling.entries.allFinite())
        throw std::invalid_argument("diagonalize: non-finite coupling matrix");

    // Hermitian couplings (the motion-averaged ensemble matrix) get the
    // self-adjoint solver: orthonormal eigenvectors to machine precision.
    const bool hermitian =
        (coupling.entries - coupling.entries.adjoint()).cwiseAbs().maxCoeff() <=
        1e-14 * std::max(1.0, coupling.entries.cwiseAbs().maxCoeff());
    ComplexVector ev;
    ComplexMatrix vectors;
    if (hermitian) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(coupling.entries);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed to converge");
        ev = solver.eigenvalues().cast<std::complex<double>>();
        vectors = solver.eigenvectors();
    } else {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(coupling.entries, true);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed to converge");
        ev = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }

    // Sort by descending rate, then ascending shift, then original index.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (ev[a].real() != ev[b].real()) return ev[a].real() > ev[b].real();
        if (ev[a].imag() != ev[b].imag()) return ev[a].imag() < ev[b].imag();
        return a < b;
    });

    ModeDecomposition d;
    d.eigenvalues.resize(n);
    d.modes.resize(n, n);
    for (int k = 0; k < n; ++k) {
        d.eigenvalues[k] = ev[order[k]];
        d.modes.col(k) = vectors.col(order[k]);
    }

    // Orthonormalize within degenerate blocks for determinism.
    const double scale = std::max(1.0, d.eigenvalues.cwiseAbs().maxCoeff());
    int blk = 0;
    while (blk < n) {
        int end = blk + 1;
        while (end < n &&
               std::abs(d.eigenvalues[end] - d.eigenvalues[blk]) <= 1e-12 * scale)
            ++end;
        if (end - blk > 1) {
            for (int c = blk; c < end; ++c) {
                for (int p = blk; p < c; ++p) {
                    const std::complex<double> proj =
                        d.modes.col(p).dot(d.modes.col(c));
                    d.modes.col(c) -= proj * d.modes.col(p);
                }
                const double nn = d.modes.col(c).norm();
                if (nn < 1e-12)
                    throw std::runtime_error(
                        "diagonalize: defective degenerate block");
                d.modes.col(c) /= nn;
            }
        }
        blk = end;
    }
    for (int c = 0; c < n; ++c) fix_column_phase(d.modes, c);

    Eigen::PartialPivLU<ComplexMatrix> lu(d.modes);
    d.modes_inv = lu.inverse();
    d.eigenvector_condition = d.modes.norm() * d.modes_inv.norm();

    const double residual =
        (coupling.entries * d.modes -
         d.modes * d.eigenvalues.asDiagonal().toDenseMatrix())
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-8 * n * scale)
        throw std::runtime_error(
            "diagonalize: matrix is defective beyond tolerance (condition " +
            std::to_string(d.eigenvector_condition) + ")");
    return d;
}

SumRuleReport sum_rule_report(const ModeDecomposition &d) {
    SumRuleReport r;
    const int n = d.size();
    for (int k = 0; k < n; ++k) {
        r.rate_sum += d.rate(k);
        r.shift_sum += d.shift(k);
    }
    r.rate_residual = std::abs(r.rate_sum - n) / n;
    r.shift_residual = std::abs(r.shift_sum) / n;
    return r;
}

ModeDecomposition planewave_decomposition(const LatticeSpec &spec) {
    const AtomArray atoms = build_lattice(spec);
    const WavevectorGrid grid = wavevector_grid(spec);
    const int n = atoms.size();
    ModeDecomposition d;
    d.analytic_planewave = true;
    d.modes.resize(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int c = 0; c < n; ++c)
        for (int j = 0; j < n; ++j) {
            const double phase = grid.wavevectors[c].dot(atoms.positions[j]);
            d.modes(j, c) =
                norm * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    d.modes_inv = d.modes.adjoint();
    d.eigenvalues = ComplexVector::Zero(n); // supplied by emission predictors
    d.eigenvector_condition = 1.0;
    return d;
}

std::vector<std::array<int, 3>> label_modes(const ModeDecomposition &d,
                                            const WavevectorGrid &grid,
                                            const AtomArray &atoms) {
    const int n = d.size();
    if (grid.size() != n || atoms.size() != n)
        throw std::invalid_argument("label_modes: size mismatch");
    std::vector<std::array<int, 3>> labels(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        int best = 0;
        double best_overlap = -1.0;
        long long best_n2 = 0;
        for (int g = 0; g < n; ++g) {
            std::complex<double> acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const double phase = grid.wavevectors[g].dot(atoms.positions[j]);
                acc += std::complex<double>(std::cos(phase), -std::sin(phase)) *
                       d.modes(j, c);
            }
            const double overlap = std::abs(acc);
            const auto &idx = grid.indices[g];
            const long long n2 = static_cast<long long>(idx[0]) * idx[0] +
                                 static_cast<long long>(idx[1]) * idx[1] +
                                 static_cast<long long>(idx[2]) * idx[2];
            if (overlap > best_overlap + 1e-12 ||
                (std::abs(overlap - best_overlap) <= 1e-12 && n2 < best_n2)) {
                best = g;
                best_overlap = overlap;
                best_n2 = n2;
            }
        }
        labels[static_cast<std::size_t>(c)] = grid.indices[best];
    }
    return labels;
}

SpinWave spinwave_state(const ModeDecomposition &d, int n) {
    if (n < 0 || n >= d.size())
        throw std::invalid_argument("spinwave_state: mode index out of range");
    SpinWave s;
    s.mode_index = n;
    s.normalization = d.modes.col(n).norm();
    s.coefficients = d.modes.col(n) / s.normalization;
    return s;
}

ExcitationReport prepare_coherent_spinwave(double omega_ab_times_t,
                                           int atom_count) {
    if (omega_ab_times_t < 0.0)
        throw std::invalid_argument("pulse area must be >= 0");
    if (atom_count < 1)
        throw std::invalid_argument("atom count must be >= 1");
    ExcitationReport r;
    r.amplitude = omega_ab_times_t / 2.0;
    r.mean_excitation = r.amplitude * r.amplitude;
    r.low_excitation_valid = r.mean_excitation / atom_count <= 0.1;
    return r;
}

void dump_mode_table_csv(std::ostream &out, const ModeDecomposition &d,
                         const std::vector<std::array<int, 3>> &labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != d.size())
        throw std::invalid_argument("dump_mode_table_csv: label count mismatch");
    out << "n_label,re_J,im_J,rate,shift\n";
    out.precision(17);
    for (int k = 0; k < d.size(); ++k) {
        static constexpr std::array<int, 3> kNoLabel = {0, 0, 0};
        const auto &l =
            labels.empty() ? kNoLabel : labels[static_cast<std::size_t>(k)];
        out << l[0] << ' ' << l[1] << ' ' << l[2] << ','
            << d.eigenvalues[k].real() << ',' << d.eigenvalues[k].imag() << ','
            << d.rate(k) << ',' << d.shift(k) << '\n';
    }
}

} // namespace radiant
