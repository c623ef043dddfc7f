#include "radiant/emission.hpp"

#include "radiant/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace radiant {

namespace {

constexpr double kSubradiantCutoff = 1e-8;
constexpr double kSpeedOfLight = 2.99792458e8; // m/s

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// Diffraction peak profile: N sinc^2(N x) on (-pi/2, pi/2), zero outside.
double f_peak(int n, double x) {
    if (x <= -M_PI / 2 || x >= M_PI / 2) return 0.0;
    const double s = sinc(n * x);
    return n * s * s;
}

Vec3 unit_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return Vec3(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

void require_unit(const Vec3 &v, const char *what) {
    if (std::abs(v.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

int int_part(double x) { return static_cast<int>(x * (1.0 + 1e-12)); }

// Heaviside with the theta(0) = 1/2 convention.
double heaviside(double x) {
    if (std::abs(x) <= 1e-12) return 0.5;
    return x > 0.0 ? 1.0 : 0.0;
}

} // namespace

double AngularDistribution::integral() const {
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        terms[i] = grid.node_weight(i) * values[i];
    return pairwise_sum(terms);
}

AngularDistribution angular_distribution_exact(const ModeDecomposition &d,
                                               const AtomArray &atoms,
                                               const Vec3 &laser_dir,
                                               const ComplexVector &psi,
                                               const AngularGrid &grid) {
    const int n = d.size();
    if (atoms.size() != n || psi.size() != n)
        throw std::invalid_argument("angular_distribution_exact: size mismatch");
    require_unit(laser_dir, "laser direction");
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(
            "angular_distribution_exact: psi must be normalized");

    AngularDistribution out;
    out.grid = grid;
    out.kind = DistributionKind::Exact;
    out.values.assign(grid.size(), 0.0);

    // Modes that never decay make the 1/(J_n^* + J_n') kernel singular.
    std::vector<bool> keep(static_cast<std::size_t>(n), true);
    for (int k = 0; k < n; ++k) {
        if (d.rate(k) < kSubradiantCutoff) {
            keep[static_cast<std::size_t>(k)] = false;
            out.excluded_modes.push_back(k);
        }
    }

    const ComplexVector c = d.modes_inv * psi;
    ComplexMatrix kernel(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const std::complex<double> s =
                std::conj(d.eigenvalues[a]) + d.eigenvalues[b];
            kernel(a, b) = (keep[static_cast<std::size_t>(a)] &&
                            keep[static_cast<std::size_t>(b)])
                               ? 1.0 / s
                               : 0.0;
        }

    parallel_for(grid.size(), [&](std::size_t node) {
        const Vec3 u = unit_from_angles(grid.node_theta(node),
                                        grid.node_phi(node));
        const Vec3 q = u - laser_dir; // in units of k_L; positions carry k_L
        ComplexVector e(n);
        for (int l = 0; l < n; ++l) {
            const double phase = q.dot(atoms.positions[l]);
            e[l] = std::complex<double>(std::cos(phase), -std::sin(phase));
        }
        ComplexVector w = (d.modes.transpose() * e).cwiseProduct(c);
        const std::complex<double> val = w.adjoint() * (kernel * w);
        out.values[node] = val.real() / (4.0 * M_PI);
    });
    return out;
}

AngularDistribution angular_distribution_planewave(const LatticeSpec &spec,
                                                   const Vec3 &laser_dir,
                                                   const std::array<int, 3> &n,
                                                   const AngularGrid &grid) {
    spec.validate();
    require_unit(laser_dir, "laser direction");
    const AtomArray atoms = build_lattice(spec);
    const int count = atoms.size();
    Vec3 spin_wave = Vec3::Zero();
    const double g0 = 2.0 * M_PI / spec.spacing;
    for (int a = 0; a < 3; ++a)
        spin_wave += g0 * (static_cast<double>(n[a]) / spec.counts[a]) *
                     spec.axes[a];

    AngularDistribution out;
    out.grid = grid;
    out.kind = DistributionKind::Planewave;
    out.values.assign(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t node) {
        const Vec3 u = unit_from_angles(grid.node_theta(node),
                                        grid.node_phi(node));
        const Vec3 q = u - laser_dir - spin_wave;
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < count; ++j) {
            const double phase = q.dot(atoms.positions[j]);
            acc += std::complex<double>(std::cos(phase), std::sin(phase));
        }
        out.values[node] = std::norm(acc) / (4.0 * M_PI * count);
    });
    return out;
}

RateEstimate rate_from_normalization(const AngularDistribution &dist) {
    RateEstimate r;
    r.rate = dist.integral();
    try {
        const double fwhm = beam_width(dist);
        if (fwhm < 5.0 * M_PI / dist.grid.n_theta) r.resolution_warning = true;
    } catch (const std::runtime_error &) {
        // No unique peak: nothing to under-resolve.
    }
    return r;
}

namespace {

std::vector<BraggPeak> bragg_1d(const LatticeSpec &spec, const Vec3 &laser_dir,
                                int n_index) {
    if (std::abs(laser_dir.z() - 1.0) > 1e-9)
        throw std::invalid_argument("1D Bragg analysis assumes the laser along +z");
    const double kd = spec.spacing;
    const int n_atoms = spec.counts[2];
    const double frac = static_cast<double>(n_index) / n_atoms;

    std::vector<double> gl_x, gl_w;
    const int nq = std::max(512, 16 * n_atoms);
    gauss_legendre(nq, gl_x, gl_w);

    std::vector<BraggPeak> peaks;
    const int m_max = static_cast<int>(kd / M_PI) + 2;
    for (int m = -m_max; m <= m_max; ++m) {
        // Peak term argument x(u) = (kd/2)(u - 1) - pi n/N + m pi,
        // supported where |x| < pi/2.
        const double u_lo =
            std::max(-1.0, 1.0 + (2.0 / kd) * (-M_PI / 2 + M_PI * frac - m * M_PI));
        const double u_hi =
            std::min(1.0, 1.0 + (2.0 / kd) * (M_PI / 2 + M_PI * frac - m * M_PI));
        const double u_star = 1.0 + (2.0 * M_PI / kd) * (frac - m);
        const bool exists = u_star >= -1.0 - 1e-12 && u_star <= 1.0 + 1e-12;
        if (u_hi <= u_lo && !exists) continue;

        double q = 0.0;
        if (u_hi > u_lo) {
            const double mid = 0.5 * (u_lo + u_hi);
            const double hw = 0.5 * (u_hi - u_lo);
            for (int i = 0; i < nq; ++i) {
                const double u = mid + hw * gl_x[static_cast<std::size_t>(i)];
                const double x = 0.5 * kd * (u - 1.0) - M_PI * frac + m * M_PI;
                q += gl_w[static_cast<std::size_t>(i)] * f_peak(n_atoms, x);
            }
            q *= 0.5 * hw; // (1/4pi) * 2pi * du
        }
        BraggPeak p;
        p.m = {0, 0, m};
        p.exists = exists;
        p.cone_cos = std::clamp(u_star, -1.0, 1.0);
        p.direction = Vec3(0.0, 0.0, p.cone_cos >= 0.0 ? 1.0 : -1.0);
        p.probability = q;
        peaks.push_back(p);
    }
    double total = 0.0;
    for (const auto &p : peaks) total += p.probability;
    if (total > 0.0)
        for (auto &p : peaks) p.probability /= total;
    return peaks;
}

std::vector<BraggPeak> bragg_3d(const LatticeSpec &spec, const Vec3 &laser_dir,
                                const std::array<int, 3> &n_index) {
    const int nx = spec.counts[0];
    if (spec.counts[1] != nx || spec.counts[2] != nx)
        throw std::invalid_argument("3D Bragg analysis assumes a cubic lattice");
    const double kd = spec.spacing;
    const double beta = 0.25 * kd * kd * nx * nx; // (kd/2)^2 N_x^2
    const double n_total = static_cast<double>(nx) * nx * nx;

    std::vector<BraggPeak> peaks;
    const int m_max = static_cast<int>(kd / M_PI) + 1;
    for (int mx = -m_max; mx <= m_max; ++mx)
        for (int my = -m_max; my <= m_max; ++my)
            for (int mz = -m_max; mz <= m_max; ++mz) {
                Vec3 v = laser_dir;
                const int m_arr[3] = {mx, my, mz};
                for (int a = 0; a < 3; ++a)
                    v += (2.0 * M_PI / kd) *
                         (static_cast<double>(n_index[a]) / spec.counts[a] +
                          m_arr[a]) *
                         spec.axes[a];
                const double b = v.norm();
                // Gaussian-peak weight integrated over the sphere.
                const double c = 2.0 * beta * b;
                double q;
                if (c < 1e-8) {
                    q = n_total * std::sqrt(M_PI) *
                        std::exp(-beta * (1.0 + b * b));
                } else {
                    q = n_total * std::sqrt(M_PI) / (4.0 * c) *
                        (std::exp(-beta * (1.0 - b) * (1.0 - b)) -
                         std::exp(-beta * (1.0 + b) * (1.0 + b)));
                }
                const bool exists = beta * (1.0 - b) * (1.0 - b) <= 9.0;
                if (!exists && q < 1e-300) continue;
                BraggPeak p;
                p.m = {mx, my, mz};
                p.exists = exists;
                p.direction = b > 0.0 ? Vec3(v / b) : Vec3::UnitZ();
                p.cone_cos = p.direction.z();
                p.probability = q;
                peaks.push_back(p);
            }
    double total = 0.0;
    for (const auto &p : peaks) total += p.probability;
    if (total > 0.0)
        for (auto &p : peaks) p.probability /= total;
    std::sort(peaks.begin(), peaks.end(),
              [](const BraggPeak &a, const BraggPeak &b) {
                  return a.probability > b.probability;
              });
    return peaks;
}

} // namespace

std::vector<BraggPeak> bragg_decompose(const LatticeSpec &spec,
                                       const Vec3 &laser_dir,
                                       const std::array<int, 3> &n) {
    spec.validate();
    require_unit(laser_dir, "laser direction");
    if (spec.dimensionality == 1) return bragg_1d(spec, laser_dir, n[2]);
    return bragg_3d(spec, laser_dir, n);
}

PredictedRates predict_1d(const LatticeSpec &spec, int n) {
    spec.validate();
    if (spec.dimensionality != 1)
        throw std::invalid_argument("predict_1d requires a 1D lattice");
    const double kd = spec.spacing;
    const int n_atoms = spec.counts[2];
    const double frac = static_cast<double>(n) / n_atoms;
    const double ratio = kd / M_PI; // 2 d0 / lambda
    const double chi = M_PI / kd;   // lambda / (2 d0)

    PredictedRates r;
    r.enhancement = chi;
    const double bulk = std::max(0.0, ratio + frac);
    r.rate = chi * (heaviside(-frac) * heaviside(ratio + frac) + int_part(bulk));
    r.superradiant = r.rate > 0.5;
    r.beam_width = 1.0 / std::sqrt(kd * n_atoms);
    r.forward_probability = 1.0 / (1.0 + 2.0 * int_part(ratio));
    return r;
}

PredictedRates predict_3d(const LatticeSpec &spec, const Vec3 &laser_dir,
                          const std::array<int, 3> &n) {
    spec.validate();
    require_unit(laser_dir, "laser direction");
    const int nx = spec.counts[0];
    if (spec.dimensionality != 3 || spec.counts[1] != nx || spec.counts[2] != nx)
        throw std::invalid_argument("predict_3d requires a cubic lattice");
    const double kd = spec.spacing;
    const double half_lambda_over_d0 = M_PI / kd; // lambda / (2 d0)
    const double chi =
        nx * half_lambda_over_d0 * half_lambda_over_d0 / std::sqrt(M_PI);

    PredictedRates r;
    r.enhancement = chi;
    r.beam_width = 1.0 / (kd * nx); // 1 / (k_L d0 N^{1/3})

    // Best diffraction order for the energy-momentum condition.
    const int m_max = static_cast<int>(kd / M_PI) + 1;
    double best_dev = std::numeric_limits<double>::infinity();
    for (int mx = -m_max; mx <= m_max; ++mx)
        for (int my = -m_max; my <= m_max; ++my)
            for (int mz = -m_max; mz <= m_max; ++mz) {
                Vec3 v = laser_dir;
                const int m_arr[3] = {mx, my, mz};
                for (int a = 0; a < 3; ++a)
                    v += (2.0 * M_PI / kd) *
                         (static_cast<double>(n[a]) / spec.counts[a] +
                          m_arr[a]) *
                         spec.axes[a];
                const double dev = std::abs(v.norm() - 1.0);
                if (dev < best_dev) {
                    best_dev = dev;
                    r.m_c = {mx, my, mz};
                    r.peak_direction = v.norm() > 0 ? Vec3(v.normalized())
                                                    : Vec3::UnitZ();
                }
            }
    // Peak survives while its Gaussian weight is non-negligible.
    r.peak_exists = 0.25 * kd * kd * nx * nx * best_dev * best_dev <= 9.0;

    const bool directional = kd < M_PI; // lambda > 2 d0
    const bool symmetric_mode = n[0] == 0 && n[1] == 0 && n[2] == 0;
    if (directional) {
        r.rate = r.peak_exists ? chi : 0.0;
        r.superradiant = r.peak_exists;
        r.escape_probability = 0.0;
        r.forward_probability = r.peak_exists ? 1.0 : 0.0;
    } else if (symmetric_mode) {
        // lambda << d0 limit: forward peak plus an isotropic background.
        r.rate = 1.0 + chi;
        r.superradiant = true;
        r.escape_probability = 1.0 / (1.0 + chi);
        r.forward_probability = chi / (1.0 + chi);
    } else {
        r.rate = r.peak_exists ? chi : 0.0;
        r.superradiant = r.peak_exists;
        r.escape_probability = r.peak_exists ? 0.0 : 1.0;
        r.forward_probability = 0.0;
    }
    return r;
}

PhotonMode photon_mode(const ModeDecomposition &d, const AtomArray &atoms,
                       const Vec3 &laser_dir, int n, const AngularGrid &grid,
                       int radial_points) {
    if (n < 0 || n >= d.size())
        throw std::invalid_argument("photon_mode: mode index out of range");
    require_unit(laser_dir, "laser direction");
    if (radial_points < 3)
        throw std::invalid_argument("photon_mode: radial grid too coarse");
    const double rate = d.rate(n);
    if (rate <= kSubradiantCutoff)
        throw std::invalid_argument(
            "photon_mode: mode does not decay, no outgoing photon");

    double rate_max = 0.0;
    for (int k = 0; k < d.size(); ++k) rate_max = std::max(rate_max, d.rate(k));

    PhotonMode out;
    out.grid = grid;
    const double span = 40.0 * rate_max / 2.0;
    out.omega.resize(static_cast<std::size_t>(radial_points));
    for (int i = 0; i < radial_points; ++i)
        out.omega[static_cast<std::size_t>(i)] =
            -span + 2.0 * span * i / (radial_points - 1);

    // Angular factor |sum_l e^{-i q.r_l} M_{l n}|^2 / N_n^2, at line center.
    const double nn = d.modes.col(n).norm();
    out.angular_values.assign(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t node) {
        const Vec3 u = unit_from_angles(grid.node_theta(node),
                                        grid.node_phi(node));
        const Vec3 q = u - laser_dir;
        std::complex<double> acc(0.0, 0.0);
        for (int l = 0; l < d.size(); ++l) {
            const double phase = q.dot(atoms.positions[l]);
            acc += std::complex<double>(std::cos(phase), -std::sin(phase)) *
                   d.modes(l, n);
        }
        out.angular_values[node] = std::norm(acc) / (nn * nn);
    });

    std::vector<double> ang_terms(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        ang_terms[i] = grid.node_weight(i) * out.angular_values[i];
    const double ang_total = pairwise_sum(ang_terms);

    const std::complex<double> jn = d.eigenvalues[n];
    const double dx = 2.0 * span / (radial_points - 1);
    out.radial_marginal.resize(static_cast<std::size_t>(radial_points));
    double total = 0.0;
    for (int i = 0; i < radial_points; ++i) {
        const double x = out.omega[static_cast<std::size_t>(i)];
        const std::complex<double> den(-jn.real(), x - jn.imag());
        const double lorentz = 1.0 / std::norm(den);
        const double val = lorentz * ang_total;
        out.radial_marginal[static_cast<std::size_t>(i)] = val;
        const double w = (i == 0 || i == radial_points - 1) ? 0.5 * dx : dx;
        total += w * val;
    }
    for (auto &v : out.radial_marginal) v /= total;
    for (auto &v : out.angular_values) v /= ang_total;
    out.total = 1.0;

    // HWHM of the radial marginal by interpolated half-max crossings.
    int imax = 0;
    for (int i = 1; i < radial_points; ++i)
        if (out.radial_marginal[static_cast<std::size_t>(i)] >
            out.radial_marginal[static_cast<std::size_t>(imax)])
            imax = i;
    const double half = 0.5 * out.radial_marginal[static_cast<std::size_t>(imax)];
    auto cross = [&](int dir) {
        for (int i = imax; i + dir >= 0 && i + dir < radial_points; i += dir) {
            const double a = out.radial_marginal[static_cast<std::size_t>(i)];
            const double b =
                out.radial_marginal[static_cast<std::size_t>(i + dir)];
            if (b <= half) {
                const double t = (a - half) / (a - b);
                return out.omega[static_cast<std::size_t>(i)] +
                       t * (out.omega[static_cast<std::size_t>(i + dir)] -
                            out.omega[static_cast<std::size_t>(i)]);
            }
        }
        return out.omega[dir > 0 ? static_cast<std::size_t>(radial_points - 1)
                                 : 0];
    };
    out.radial_hwhm = 0.5 * (cross(+1) - cross(-1));
    return out;
}

double beam_width(const AngularDistribution &dist) {
    const auto &g = dist.grid;
    if (dist.values.empty()) throw std::runtime_error("empty distribution");
    const double vmax = *std::max_element(dist.values.begin(), dist.values.end());
    const double vmin = *std::min_element(dist.values.begin(), dist.values.end());
    if (vmax - vmin <= 1e-9 * std::max(1.0, std::abs(vmax)))
        throw std::runtime_error("beam_width: no unique peak");

    std::size_t peak = static_cast<std::size_t>(
        std::max_element(dist.values.begin(), dist.values.end()) -
        dist.values.begin());
    const int pt = static_cast<int>(peak) / g.n_phi;
    const int pp = static_cast<int>(peak) % g.n_phi;
    const int pp_opp = (pp + g.n_phi / 2) % g.n_phi;

    // Great-circle profile through the peak and the poles: s in (-pi, pi],
    // s > 0 on the peak meridian, s < 0 on the opposite one.
    std::vector<double> s(2 * static_cast<std::size_t>(g.n_theta));
    std::vector<double> prof(s.size());
    for (int t = 0; t < g.n_theta; ++t) {
        s[static_cast<std::size_t>(g.n_theta - 1 - t)] =
            -g.theta[static_cast<std::size_t>(t)];
        prof[static_cast<std::size_t>(g.n_theta - 1 - t)] =
            dist.values[static_cast<std::size_t>(t) * g.n_phi + pp_opp];
        s[static_cast<std::size_t>(g.n_theta + t)] =
            g.theta[static_cast<std::size_t>(t)];
        prof[static_cast<std::size_t>(g.n_theta + t)] =
            dist.values[static_cast<std::size_t>(t) * g.n_phi + pp];
    }
    std::size_t ip = static_cast<std::size_t>(
        std::max_element(prof.begin(), prof.end()) - prof.begin());
    const double half = 0.5 * prof[ip];

    auto cross = [&](int dir) -> double {
        for (std::size_t i = ip; (dir > 0 ? i + 1 < prof.size() : i > 0);
             i = static_cast<std::size_t>(static_cast<long>(i) + dir)) {
            const std::size_t j =
                static_cast<std::size_t>(static_cast<long>(i) + dir);
            if (prof[j] <= half) {
                const double t = (prof[i] - half) / (prof[i] - prof[j]);
                return s[i] + t * (s[j] - s[i]);
            }
        }
        throw std::runtime_error("beam_width: no unique peak");
    };
    return cross(+1) - cross(-1);
}

ValidityReport propagation_validity(const ModeDecomposition &d,
                                    double gamma_bar_hz, double length_m,
                                    double omega_l_hz) {
    if (!(gamma_bar_hz > 0.0) || !(length_m > 0.0))
        throw std::invalid_argument("propagation_validity: physical scales must be > 0");
    ValidityReport r;
    double max_rate = 0.0, max_shift = 0.0;
    for (int k = 0; k < d.size(); ++k) {
        max_rate = std::max(max_rate, d.rate(k));
        max_shift = std::max(max_shift, std::abs(d.shift(k)));
    }
    r.max_ratio = max_rate * gamma_bar_hz * length_m / kSpeedOfLight;
    r.valid = r.max_ratio <= 1e-2;
    r.margin = r.max_ratio > 0.0 ? 1e-2 / r.max_ratio
                                 : std::numeric_limits<double>::infinity();
    if (omega_l_hz > 0.0)
        r.shift_ok = max_shift * gamma_bar_hz / omega_l_hz <= 1e-3;
    return r;
}

void dump_angular_csv(std::ostream &out, const AngularDistribution &dist) {
    out << "theta,phi,weight,intensity\n";
    out.precision(17);
    for (std::size_t i = 0; i < dist.values.size(); ++i)
        out << dist.grid.node_theta(i) << ',' << dist.grid.node_phi(i) << ','
            << dist.grid.node_weight(i) << ',' << dist.values[i] << '\n';
}

void dump_bragg_csv(std::ostream &out, const std::vector<BraggPeak> &peaks) {
    out << "m1,m2,m3,exists,ux,uy,uz,p\n";
    out.precision(17);
    for (const auto &p : peaks)
        out << p.m[0] << ',' << p.m[1] << ',' << p.m[2] << ','
            << (p.exists ? 1 : 0) << ',' << p.direction.x() << ','
            << p.direction.y() << ',' << p.direction.z() << ','
            << p.probability << '\n';
}

} // namespace radiant
