#pragma once

#include "periwave/fourier.hpp"

#include <Eigen/Core>
#include <vector>

namespace periwave {

/// Monotone reparametrization x = xi(alpha) of [0, 2*pi] controlling grid
/// spacing. kappa > 0 refines near x = pi, kappa < 0 near x = 0 (mod 2*pi),
/// kappa = 0 is the uniform grid. rho in (0,1] is the min/max density ratio.
/// xi and its derivatives are evaluated in closed form from the cosine
/// series of the density E(alpha) = xi'(alpha).
class MeshMap {
  public:
    MeshMap() = default;
    MeshMap(int kappa, double rho);

    int kappa() const { return kappa_; }
    double rho() const { return rho_; }
    bool is_uniform() const { return cos_coeffs_.size() == 0; }

    double xi(double alpha) const;
    double density(double alpha) const;       // E(alpha) = xi'
    double density_prime(double alpha) const; // xi''
    /// Invert xi by Newton iteration (bisection fallback), |xi(b)-x| <= 1e-14.
    double xi_inverse(double x) const;

    bool operator==(const MeshMap& o) const {
        return kappa_ == o.kappa_ && rho_ == o.rho_;
    }

  private:
    int kappa_ = 0;
    double rho_ = 1.0;
    Eigen::ArrayXd cos_coeffs_; // e_j, j = 1..|kappa|; E = 1 + sum e_j cos(j a)
};

struct Segment {
    double theta = 1.0; // relative duration
    int steps = 1;      // timesteps on this segment
    int grid = 64;      // number of spatial nodes
    MeshMap map;
};

struct MeshSchedule {
    std::vector<Segment> segments;
    void validate() const; // throws ConfigError
    static MeshSchedule uniform(int grid, int steps);
};

/// Transfer nodal samples f (taken at x = from.xi(alpha_i)) to the grid of
/// `to` with grid_new nodes, by spectral interpolation of f as a function of
/// alpha at beta_j = from.xi_inverse(to.xi(alpha_j)).
Field regrid(const Field& f, const MeshMap& from, const MeshMap& to, int grid_new);

} // namespace periwave
