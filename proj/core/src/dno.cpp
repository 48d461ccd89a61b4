#include "periwave/dno.hpp"

#include "periwave/errors.hpp"
#include "periwave/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace periwave {

namespace {

using cplx = std::complex<double>;
constexpr double two_pi = 2.0 * std::numbers::pi;

inline cplx half_cot(cplx z) {
    // cot(z/2); arguments stay O(1) in the imaginary direction
    const cplx w = 0.5 * z;
    return std::cos(w) / std::sin(w);
}

} // namespace

SurfaceGeometry SurfaceGeometry::build(const MeshMap& map, const Field& eta, double depth) {
    SurfaceGeometry g;
    g.map = map;
    g.eta = eta;
    g.depth = depth;
    const int M = static_cast<int>(eta.size());
    g.alpha = grid_nodes(M);
    g.x.resize(M);
    g.xi_p.resize(M);
    Eigen::ArrayXd xi_pp(M);
    for (int i = 0; i < M; ++i) {
        g.x[i] = map.xi(g.alpha[i]);
        g.xi_p[i] = map.density(g.alpha[i]);
        xi_pp[i] = map.density_prime(g.alpha[i]);
    }
    g.eta_alpha = derivative(eta);
    g.eta_x = g.eta_alpha / g.xi_p;
    const Field eta_aa = derivative(g.eta_alpha);

    g.zeta.resize(M);
    g.zeta_p.resize(M);
    g.zeta_pp.resize(M);
    for (int i = 0; i < M; ++i) {
        g.zeta[i] = cplx(g.x[i], eta[i]);
        g.zeta_p[i] = cplx(g.xi_p[i], g.eta_alpha[i]);
        g.zeta_pp[i] = cplx(xi_pp[i], eta_aa[i]);
    }

    for (int i = 0; i < M; ++i)
        if (std::abs(g.zeta_p[i]) == 0.0)
            throw NumericError("SurfaceGeometry: degenerate parametrization, zeta'(alpha_" +
                               std::to_string(i) + ") = 0");
    if (std::isfinite(depth) && eta.minCoeff() <= 0.0)
        throw NumericError("SurfaceGeometry: free surface touches the bottom (min eta = " +
                           std::to_string(eta.minCoeff()) + ")");
    return g;
}

KernelPair assemble_kernels(const SurfaceGeometry& geom) {
    const int M = geom.grid();
    const bool finite = std::isfinite(geom.depth);
    KernelPair kp;
    kp.K.resize(M, M);
    kp.G.resize(M, M);

    parallel_for(M, [&](long i) {
        const cplx zi = geom.zeta[i];
        const cplx zpi = geom.zeta_p[i];
        for (int j = 0; j < M; ++j) {
            double K, G;
            if (j == static_cast<int>(i)) {
                const cplx d = geom.zeta_pp[i] / (2.0 * zpi);
                K = -d.imag();
                G = d.real();
            } else {
                const cplx cz = half_cot(zi - geom.zeta[j]);
                const double flat = 0.5 / std::tan(0.5 * (geom.alpha[i] - geom.alpha[j]));
                K = (0.5 * geom.zeta_p[j] * cz).imag();
                G = (0.5 * zpi * cz).real() - flat;
            }
            if (finite) {
                const cplx czb = half_cot(zi - std::conj(geom.zeta[j]));
                K -= (0.5 * std::conj(geom.zeta_p[j]) * czb).imag();
                G -= (0.5 * zpi * czb).real();
            }
            kp.K(i, j) = K;
            kp.G(i, j) = G;
        }
    });

    if (!kp.K.allFinite() || !kp.G.allFinite()) {
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (!std::isfinite(kp.K(i, j)) || !std::isfinite(kp.G(i, j)))
                    throw NumericError("assemble_kernels: non-finite entry at (" +
                                       std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    return kp;
}

DnoOperator::DnoOperator(SurfaceGeometry geom, DipoleSolver solver)
    : geom_(std::move(geom)), kernels_(assemble_kernels(geom_)), solver_(solver) {
    const int M = geom_.grid();
    fredholm_ = kernels_.K / M;
    fredholm_.diagonal().array() += 0.5;
    lu_.compute(fredholm_);
    const double rc = lu_.rcond();
    if (!(rc > 16.0 * std::numeric_limits<double>::epsilon()))
        throw NumericError("DnoOperator: singular dipole system, rcond estimate " +
                           std::to_string(rc));
}

Field DnoOperator::solve_dipole(const Field& phi_surface) const {
    if (solver_ == DipoleSolver::DirectLU)
        return lu_.solve(phi_surface.matrix()).array();

    // Unpreconditioned GMRES on the Fredholm system; the operator is a
    // compact perturbation of I/2, so convergence is fast.
    const Eigen::MatrixXd& A = fredholm_;
    const int n = static_cast<int>(A.rows());
    const int max_it = std::min(400, n);
    const double tol = 1e-13;
    Eigen::VectorXd b = phi_surface.matrix();
    const double bnorm = b.norm();
    if (bnorm == 0.0) return Field::Zero(n);

    Eigen::MatrixXd V(n, max_it + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(max_it + 1, max_it);
    Eigen::VectorXd cs(max_it), sn(max_it), gamma(max_it + 1);
    V.col(0) = b / bnorm;
    gamma.setZero();
    gamma[0] = bnorm;
    int k = 0;
    for (; k < max_it; ++k) {
        Eigen::VectorXd w = A * V.col(k);
        for (int j = 0; j <= k; ++j) {
            H(j, k) = V.col(j).dot(w);
            w -= H(j, k) * V.col(j);
        }
        H(k + 1, k) = w.norm();
        for (int j = 0; j < k; ++j) {
            const double t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
            H(j + 1, k) = -sn[j] * H(j, k) + cs[j] * H(j + 1, k);
            H(j, k) = t;
        }
        const double denom = std::hypot(H(k, k), H(k + 1, k));
        cs[k] = H(k, k) / denom;
        sn[k] = H(k + 1, k) / denom;
        H(k, k) = denom;
        H(k + 1, k) = 0.0;
        gamma[k + 1] = -sn[k] * gamma[k];
        gamma[k] = cs[k] * gamma[k];
        if (std::abs(gamma[k + 1]) <= tol * bnorm) {
            ++k;
            break;
        }
        if (H(k + 1, k) != 0.0 && k + 1 < max_it) V.col(k + 1) = w / H(k + 1, k);
    }
    if (k == max_it && std::abs(gamma[k]) > tol * bnorm)
        throw ConvergenceError("DnoOperator: GMRES failed to converge for the dipole density");
    Eigen::VectorXd y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(gamma.head(k));
    return (V.leftCols(k) * y).array();
}

Eigen::MatrixXd DnoOperator::solve_dipole_batch(const Eigen::MatrixXd& phi_cols) const {
    if (solver_ == DipoleSolver::DirectLU) return lu_.solve(phi_cols);
    Eigen::MatrixXd out(phi_cols.rows(), phi_cols.cols());
    for (Eigen::Index j = 0; j < phi_cols.cols(); ++j)
        out.col(j) = solve_dipole(phi_cols.col(j).array()).matrix();
    return out;
}

Field DnoOperator::normal_from_dipole(const Field& mu) const {
    const int M = geom_.grid();
    const Field mu_f = filter36(mu);
    const Field gamma = derivative(mu_f);
    const Field bracket =
        0.5 * hilbert_transform(gamma) + (kernels_.G * gamma.matrix()).array() / M;
    return bracket / geom_.xi_p;
}

Eigen::MatrixXd DnoOperator::normal_from_dipole_batch(const Eigen::MatrixXd& mu_cols) const {
    const int M = geom_.grid();
    Eigen::MatrixXd mu_f = mu_cols;
    filter36_columns(mu_f);
    Eigen::MatrixXd gamma, hg;
    derivative_columns(mu_f, gamma);
    hilbert_columns(gamma, hg);
    Eigen::MatrixXd bracket = 0.5 * hg + (kernels_.G * gamma) / M;
    return (bracket.array().colwise() / geom_.xi_p).matrix();
}

Field DnoOperator::apply(const Field& phi_surface) const {
    return normal_from_dipole(solve_dipole(phi_surface));
}

Eigen::MatrixXd DnoOperator::apply_batch(const Eigen::MatrixXd& phi_cols) const {
    return normal_from_dipole_batch(solve_dipole_batch(phi_cols));
}

void DnoOperator::surface_gradient(const Field& trace, Field& px, Field& py) const {
    const Field tx = derivative(trace) / geom_.xi_p;
    const Field gn = apply(trace);
    const Field metric = 1.0 + geom_.eta_x.square();
    px = (tx - geom_.eta_x * gn) / metric;
    py = (geom_.eta_x * tx + gn) / metric;
}

void DnoOperator::surface_gradient_batch(const Eigen::MatrixXd& traces, Eigen::MatrixXd& px,
                                         Eigen::MatrixXd& py) const {
    Eigen::MatrixXd tx;
    derivative_columns(traces, tx);
    tx.array().colwise() /= geom_.xi_p;
    const Eigen::MatrixXd gn = apply_batch(traces);
    const Eigen::ArrayXd metric = 1.0 + geom_.eta_x.square();
    px = ((tx.array() - gn.array().colwise() * geom_.eta_x).colwise() / metric).matrix();
    py = (((tx.array().colwise() * geom_.eta_x) + gn.array()).colwise() / metric).matrix();
}

std::pair<Field, Field> surface_velocities(const SurfaceGeometry& geom,
                                           const Field& phi_surface) {
    DnoOperator dno(geom);
    Field u, v;
    dno.surface_gradient(phi_surface, u, v);
    return {u, v};
}

} // namespace periwave
