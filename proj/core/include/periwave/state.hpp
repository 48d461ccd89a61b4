#pragma once

#include "periwave/fourier.hpp"

#include <Eigen/Core>
#include <limits>

namespace periwave {

struct PhysParams {
    double g = 1.0;         // gravitational acceleration (dimensionless)
    double sigma_rho = 0.0; // surface tension / density
    double depth = std::numeric_limits<double>::infinity(); // mean fluid depth

    bool finite_depth() const { return std::isfinite(depth); }
    void validate() const;
};

/// Dispersion relation of linear gravity waves, omega_k = sqrt(k g tanh(k h)).
double omega_k(int k, double g, double depth);

/// The dynamical state q = (eta; phi): surface height and surface velocity
/// potential sampled on the current segment grid. For finite depth, eta is
/// the total height above the bottom at y = 0 (mean ~ h); for infinite
/// depth it is the elevation (mean ~ 0).
struct SurfaceState {
    Field eta;
    Field phi;
};

/// A perturbation of SurfaceState on the same grid.
struct TangentState {
    Field eta;
    Field phi;
};

/// Batch of tangent states; column j of each matrix is one perturbation.
struct TangentBatch {
    Eigen::MatrixXd eta;
    Eigen::MatrixXd phi;

    Eigen::Index cols() const { return eta.cols(); }
    Eigen::Index rows() const { return eta.rows(); }
    TangentState column(Eigen::Index j) const {
        return TangentState{eta.col(j).array(), phi.col(j).array()};
    }
    static TangentBatch zero(Eigen::Index rows, Eigen::Index cols) {
        return TangentBatch{Eigen::MatrixXd::Zero(rows, cols),
                            Eigen::MatrixXd::Zero(rows, cols)};
    }
    static TangentBatch from_column(const TangentState& t) {
        TangentBatch b;
        b.eta = t.eta.matrix();
        b.phi = t.phi.matrix();
        return b;
    }
};

} // namespace periwave
