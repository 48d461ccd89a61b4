#include "periwave/dynamics.hpp"

#include "periwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace periwave {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void PhysParams::validate() const {
    if (!(g > 0.0)) throw ConfigError("PhysParams: g must be positive");
    if (!(sigma_rho >= 0.0)) throw ConfigError("PhysParams: sigma/rho must be >= 0");
    if (!(depth > 0.0)) throw ConfigError("PhysParams: depth must be positive");
}

double omega_k(int k, double g, double depth) {
    return std::sqrt(k * g * std::tanh(k * depth));
}

double StageContext::mean_x(const Field& f) const {
    return (f * geom.xi_p).sum() / f.size();
}

Field StageContext::project_zero_mean(const Field& f) const {
    return f - mean_x(f);
}

StageContext make_stage(const SurfaceState& q, const MeshMap& map, const PhysParams& params) {
    StageContext ctx;
    ctx.params = params;
    ctx.geom = SurfaceGeometry::build(map, q.eta, params.depth);
    ctx.dno = std::make_shared<DnoOperator>(ctx.geom);
    ctx.dno->surface_gradient(q.phi, ctx.u, ctx.v);
    ctx.varphi_x = derivative(q.phi) / ctx.geom.xi_p;
    ctx.eta_t = ctx.v - ctx.geom.eta_x * ctx.u;
    ctx.metric = 1.0 + ctx.geom.eta_x.square();
    ctx.metric32 = ctx.metric * ctx.metric.sqrt();
    return ctx;
}

SurfaceState rhs_nonlinear(const StageContext& ctx) {
    const SurfaceGeometry& geom = ctx.geom;
    Field bracket = ctx.v * ctx.eta_t - 0.5 * ctx.u.square() - 0.5 * ctx.v.square() -
                    ctx.params.g * geom.eta;
    if (ctx.params.sigma_rho != 0.0) {
        const Field slope_term = geom.eta_x / ctx.metric.sqrt();
        bracket += ctx.params.sigma_rho * (derivative(slope_term) / geom.xi_p);
    }
    return SurfaceState{ctx.eta_t, ctx.project_zero_mean(bracket)};
}

SurfaceState rhs_nonlinear(const SurfaceState& q, const PhysParams& params, const MeshMap& map) {
    return rhs_nonlinear(make_stage(q, map, params));
}

void rhs_linearized_batch(const StageContext& ctx, const TangentBatch& in, TangentBatch& out) {
    const SurfaceGeometry& geom = ctx.geom;
    const Eigen::ArrayXd& xi_p = geom.xi_p;
    const Eigen::ArrayXd& eta_x = geom.eta_x;
    const Eigen::Index M = in.rows();
    const Eigen::Index nc = in.cols();

    // boundary trace of the perturbed potential: phidot = varphidot - phi_y etadot
    Eigen::MatrixXd trace =
        in.phi - (in.eta.array().colwise() * ctx.v).matrix();

    // gradient of the harmonic extension of the trace
    Eigen::MatrixXd tx;
    derivative_columns(trace, tx);
    tx = (tx.array().colwise() / xi_p).matrix();
    const Eigen::MatrixXd gn = ctx.dno->apply_batch(trace);
    Eigen::MatrixXd px =
        ((tx.array() - gn.array().colwise() * eta_x).colwise() / ctx.metric).matrix();
    Eigen::MatrixXd py =
        (((tx.array().colwise() * eta_x) + gn.array()).colwise() / ctx.metric).matrix();

    // normal combination phidot_y - eta_x phidot_x
    const Eigen::MatrixXd dn = (py.array() - px.array().colwise() * eta_x).matrix();

    // transport terms differentiated along the surface
    Eigen::MatrixXd d_eta_u;
    derivative_columns((in.eta.array().colwise() * ctx.u).matrix(), d_eta_u);
    d_eta_u = (d_eta_u.array().colwise() / xi_p).matrix();

    Eigen::MatrixXd d_eta_uv;
    derivative_columns((in.eta.array().colwise() * (ctx.u * ctx.v)).matrix(), d_eta_uv);
    d_eta_uv = (d_eta_uv.array().colwise() / xi_p).matrix();

    out.eta = (dn.array() - d_eta_u.array()).matrix();

    Eigen::ArrayXXd bracket = -d_eta_uv.array() - tx.array().colwise() * ctx.u +
                              dn.array().colwise() * ctx.v -
                              ctx.params.g * in.eta.array();
    if (ctx.params.sigma_rho != 0.0) {
        Eigen::MatrixXd eta_dot_x;
        derivative_columns(in.eta, eta_dot_x);
        eta_dot_x = (eta_dot_x.array().colwise() / (xi_p * ctx.metric32)).matrix();
        Eigen::MatrixXd curv;
        derivative_columns(eta_dot_x, curv);
        bracket += ctx.params.sigma_rho * (curv.array().colwise() / xi_p);
    }
    // zero-mean projection (in x) per column
    const Eigen::ArrayXd w = xi_p / static_cast<double>(M);
    out.phi.resize(M, nc);
    for (Eigen::Index j = 0; j < nc; ++j) {
        const double mean = (bracket.col(j) * w).sum();
        out.phi.col(j) = (bracket.col(j) - mean).matrix();
    }
}

TangentState rhs_linearized(const StageContext& ctx, const TangentState& qdot) {
    TangentBatch in = TangentBatch::from_column(qdot);
    TangentBatch out;
    rhs_linearized_batch(ctx, in, out);
    return out.column(0);
}

TangentState rhs_linearized(const SurfaceState& q, const TangentState& qdot,
                            const PhysParams& params, const MeshMap& map) {
    return rhs_linearized(make_stage(q, map, params), qdot);
}

double energy(const SurfaceState& q, const PhysParams& params, const MeshMap& map) {
    StageContext ctx = make_stage(q, map, params);
    const Field gphi = ctx.dno->apply(q.phi);
    const Field eta0 = q.eta - ctx.mean_x(q.eta);
    Field density = 0.5 * q.phi * gphi + 0.5 * params.g * eta0.square();
    if (params.sigma_rho != 0.0) density += params.sigma_rho * (ctx.metric.sqrt() - 1.0);
    return two_pi * ctx.mean_x(density);
}

namespace {

// locate the argmax of the interpolant of f by dense scan plus Newton polish
double argmax_interpolant(const Coeffs& c, int oversample = 16) {
    const int M = 2 * (static_cast<int>(c.size()) - 1);
    const int fine = oversample * M;
    double best_a = 0.0, best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < fine; ++i) {
        const double a = two_pi * i / fine;
        const double v = eval_interpolant(c, a);
        if (v > best_v) {
            best_v = v;
            best_a = a;
        }
    }
    // Newton on f'(a) = 0
    const int half = static_cast<int>(c.size()) - 1;
    Coeffs c1(c.size()), c2(c.size());
    for (int k = 0; k <= half; ++k) {
        const std::complex<double> ik(0.0, k);
        c1[k] = c[k] * ik;
        c2[k] = c1[k] * ik;
    }
    c1[half] = c2[half] = 0.0;
    double a = best_a;
    for (int it = 0; it < 20; ++it) {
        const double f1 = eval_interpolant(c1, a);
        const double f2 = eval_interpolant(c2, a);
        if (f2 >= 0.0) break;
        const double step = f1 / f2;
        a -= step;
        if (std::abs(step) < 1e-14) break;
    }
    if (eval_interpolant(c, a) >= best_v) return a;
    return best_a;
}

} // namespace

double crest_acceleration(const SurfaceState& q_at_rest, const PhysParams& params,
                          const MeshMap& map) {
    const double phimax = q_at_rest.phi.abs().maxCoeff();
    if (phimax > 1e-10)
        throw ConfigError("crest_acceleration: state is not at rest, max|phi| = " +
                          std::to_string(phimax));
    StageContext ctx = make_stage(q_at_rest, map, params);
    const SurfaceState rate = rhs_nonlinear(ctx);
    // at rest u = v = 0 and eta_t = 0, so eta_tt = G[varphi_t]
    const Field eta_tt = ctx.dno->apply(rate.phi);

    const Coeffs ceta = analyze(q_at_rest.eta);
    const double a_crest = argmax_interpolant(ceta);
    const Coeffs cacc = analyze(eta_tt);
    return -eval_interpolant(cacc, a_crest) / params.g;
}

WaveHeight wave_height(const SurfaceState& q_at_rest) {
    const Coeffs c = analyze(q_at_rest.eta);
    const int M = static_cast<int>(q_at_rest.eta.size());
    const int fine = 16 * M;
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < fine; ++i) {
        const double v = eval_interpolant(c, two_pi * i / fine);
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    return WaveHeight{mx - mn, 0.5 * (mx - mn), mx};
}

} // namespace periwave
