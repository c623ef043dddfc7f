#pragma once

#include <cstddef>
#include <vector>

namespace radiant {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double> &nodes,
                    std::vector<double> &weights);

// Product quadrature on the sphere: Gauss-Legendre in cos(theta) times a
// uniform (periodic trapezoid) rule in phi. Weights sum to 4 pi.
struct AngularGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> theta;    // size n_theta, increasing
    std::vector<double> ctheta_w; // Gauss-Legendre weights in cos(theta)
    std::vector<double> phi;      // size n_phi, uniform in [0, 2 pi)
    double phi_w = 0.0;           // 2 pi / n_phi

    static AngularGrid product(int n_theta, int n_phi);
    // Picks node counts so a beam of the given angular width spans at
    // least ten theta nodes.
    static AngularGrid for_beam(double beam_width, int min_theta = 64,
                                int n_phi = 32);

    std::size_t size() const {
        return static_cast<std::size_t>(n_theta) * n_phi;
    }
    double node_theta(std::size_t i) const { return theta[i / n_phi]; }
    double node_phi(std::size_t i) const { return phi[i % n_phi]; }
    double node_weight(std::size_t i) const {
        return ctheta_w[i / n_phi] * phi_w;
    }
    double total_weight() const;
};

} // namespace radiant
