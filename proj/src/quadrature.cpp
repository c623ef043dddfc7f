#include "radiant/quadrature.hpp"

#include "radiant/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radiant {

void gauss_legendre(int n, std::vector<double> &nodes,
                    std::vector<double> &weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

AngularGrid AngularGrid::product(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1)
        throw std::invalid_argument("AngularGrid: node counts must be >= 1");
    AngularGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    std::vector<double> x;
    gauss_legendre(n_theta, x, g.ctheta_w);
    g.theta.resize(static_cast<std::size_t>(n_theta));
    // x = cos(theta) descending in theta; store theta increasing.
    for (int i = 0; i < n_theta; ++i)
        g.theta[static_cast<std::size_t>(i)] =
            std::acos(x[static_cast<std::size_t>(n_theta - 1 - i)]);
    std::reverse(g.ctheta_w.begin(), g.ctheta_w.end());
    g.phi.resize(static_cast<std::size_t>(n_phi));
    g.phi_w = 2.0 * M_PI / n_phi;
    for (int i = 0; i < n_phi; ++i)
        g.phi[static_cast<std::size_t>(i)] = i * g.phi_w;
    return g;
}

AngularGrid AngularGrid::for_beam(double beam_width, int min_theta, int n_phi) {
    if (!(beam_width > 0.0))
        throw std::invalid_argument("AngularGrid: beam width must be > 0");
    // Gauss-Legendre nodes are nearly uniform in theta, spacing ~ pi/n.
    int n_theta = static_cast<int>(std::ceil(10.0 * M_PI / beam_width));
    if (n_theta < min_theta) n_theta = min_theta;
    return product(n_theta, n_phi);
}

double AngularGrid::total_weight() const {
    std::vector<double> w(size());
    for (std::size_t i = 0; i < size(); ++i) w[i] = node_weight(i);
    return pairwise_sum(w);
}

} // namespace radiant
