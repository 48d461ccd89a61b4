#pragma once

#include "periwave/mesh.hpp"
#include "periwave/state.hpp"

#include <Eigen/Dense>

#include <utility>

namespace periwave {

/// Free surface zeta(alpha) = xi(alpha) + i eta(xi(alpha)) together with the
/// derived quantities needed by the layer-potential kernels. For finite
/// depth the bottom is the line y = 0 and eta holds the total height (so
/// min eta > 0 is required); for infinite depth eta is the elevation.
struct SurfaceGeometry {
    MeshMap map;
    Field eta;
    double depth = std::numeric_limits<double>::infinity();

    Eigen::ArrayXd alpha;   // parameter nodes
    Eigen::ArrayXd x;       // xi(alpha_i)
    Eigen::ArrayXd xi_p;    // xi'(alpha_i)
    Field eta_alpha;        // d eta / d alpha (spectral)
    Field eta_x;            // eta'(x) = eta_alpha / xi'
    Eigen::ArrayXcd zeta, zeta_p, zeta_pp;

    static SurfaceGeometry build(const MeshMap& map, const Field& eta, double depth);
    int grid() const { return static_cast<int>(eta.size()); }
};

/// Dense collocation kernels K, G of the dipole formulation. Row i holds
/// K(alpha_i, alpha_j); assembly is parallel over rows.
struct KernelPair {
    Eigen::MatrixXd K;
    Eigen::MatrixXd G;
};

KernelPair assemble_kernels(const SurfaceGeometry& geom);

enum class DipoleSolver { DirectLU, Gmres };

/// The Dirichlet-Neumann operator for one frozen surface: kernels are
/// assembled and the Fredholm system factorized once; the object is then
/// immutable and safe to share across concurrent solves.
class DnoOperator {
  public:
    explicit DnoOperator(SurfaceGeometry geom, DipoleSolver solver = DipoleSolver::DirectLU);

    const SurfaceGeometry& geometry() const { return geom_; }
    const KernelPair& kernels() const { return kernels_; }

    /// Solve (1/2) mu + (1/(2 pi)) int K mu = phi_surface for the dipole density.
    Field solve_dipole(const Field& phi_surface) const;
    Eigen::MatrixXd solve_dipole_batch(const Eigen::MatrixXd& phi_cols) const;

    /// (G phi)(xi(alpha_i)): normal derivative scaled by the surface metric.
    Field apply(const Field& phi_surface) const;
    Eigen::MatrixXd apply_batch(const Eigen::MatrixXd& phi_cols) const;

    /// Gradient (psi_x, psi_y) at the surface of the harmonic extension of
    /// the given surface trace.
    void surface_gradient(const Field& trace, Field& px, Field& py) const;
    void surface_gradient_batch(const Eigen::MatrixXd& traces, Eigen::MatrixXd& px,
                                Eigen::MatrixXd& py) const;

  private:
    Field normal_from_dipole(const Field& mu) const;
    Eigen::MatrixXd normal_from_dipole_batch(const Eigen::MatrixXd& mu_cols) const;

    SurfaceGeometry geom_;
    KernelPair kernels_;
    DipoleSolver solver_;
    Eigen::MatrixXd fredholm_;                  // I/2 + K/M
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Velocity components (u, v) = (phi_x, phi_y) at the free surface.
std::pair<Field, Field> surface_velocities(const SurfaceGeometry& geom,
                                           const Field& phi_surface);

} // namespace periwave
