#pragma once

#include <Eigen/Core>
#include <complex>

namespace periwave {

/// Real periodic field sampled at the M equispaced parameter nodes
/// alpha_i = 2*pi*i/M (M even).
using Field = Eigen::ArrayXd;

/// Fourier coefficients of a real field, k = 0..M/2, with the convention
///   fhat_k = (1/M) sum_i f(alpha_i) e^{-ik alpha_i},
/// so a mode 2*c*cos(kx) has fhat_k = c. Negative modes are implied by
/// conjugate symmetry; the Nyquist coefficient is real.
using Coeffs = Eigen::VectorXcd;

Eigen::ArrayXd grid_nodes(int M);

Coeffs analyze(const Field& f);
Field synthesize(const Coeffs& c);

/// Spectral d/dalpha: coefficient k -> ik * coefficient. The Nyquist mode is
/// zeroed (its odd-order derivative is not representable on a real grid).
Field derivative(const Field& f);

/// Hilbert transform, symbol -i*sgn(k). Mean and Nyquist modes map to zero.
Field hilbert_transform(const Field& f);

/// 36th-order smoothing filter: mode k is scaled by
/// exp(-36 (|k|/k_max)^36), k_max = M/2.
Field filter36(const Field& f);
double filter36_multiplier(int k, int M);

/// Evaluate the trigonometric interpolant at an arbitrary parameter value.
double eval_interpolant(const Coeffs& c, double alpha);

/// Exact band-limited resampling onto a grid of `factor * M` nodes.
Field upsample(const Field& f, int factor);

/// Column-wise batch versions (each column is a Field on the same grid).
void filter36_columns(Eigen::MatrixXd& cols);
void derivative_columns(const Eigen::MatrixXd& in, Eigen::MatrixXd& out);
void hilbert_columns(const Eigen::MatrixXd& in, Eigen::MatrixXd& out);

} // namespace periwave
