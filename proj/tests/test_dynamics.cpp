#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <periwave/dynamics.hpp>
#include <periwave/errors.hpp>

#include <cmath>
#include <limits>
#include <numbers>

using namespace periwave;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

double linf(const Field& f) { return f.abs().maxCoeff(); }
} // namespace

TEST_CASE("flat rest state is an equilibrium (both depths)") {
    const int M = 64;
    for (double h : {inf, 0.5}) {
        PhysParams p;
        p.depth = h;
        const double level = std::isfinite(h) ? h : 0.0;
        SurfaceState q{Field::Constant(M, level), Field::Zero(M)};
        const SurfaceState rate = rhs_nonlinear(q, p, MeshMap{});
        CHECK(linf(rate.eta) < 1e-13);
        CHECK(linf(rate.phi) < 1e-13);
    }
}

TEST_CASE("infinitesimal wave: varphi_t = -g eta + O(eps^2)") {
    const int M = 64;
    const double eps = 1e-6;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    SurfaceState q{eps * x.cos(), Field::Zero(M)};
    const SurfaceState rate = rhs_nonlinear(q, p, MeshMap{});
    CHECK(linf(rate.phi + eps * x.cos()) < 10 * eps * eps);
    CHECK(linf(rate.eta) < 10 * eps * eps);
}

TEST_CASE("linearized curvature term at high wave number") {
    const int M = 128;
    const double a = 1e-4, k = 40.0, sr = 0.000625;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams with_st, without_st;
    with_st.sigma_rho = sr;
    SurfaceState q{a * (k * x).cos(), Field::Zero(M)};
    const Field dphi = rhs_nonlinear(q, with_st, MeshMap{}).phi -
                       rhs_nonlinear(q, without_st, MeshMap{}).phi;
    const Field expect = -sr * k * k * a * (k * x).cos();
    CHECK(linf(dphi - expect) < 1e-3 * linf(expect));
}

TEST_CASE("linearized rhs: zero tangent maps to zero") {
    const int M = 64;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    SurfaceState q{0.05 * x.cos(), 0.02 * x.sin()};
    TangentState z{Field::Zero(M), Field::Zero(M)};
    const TangentState rate = rhs_linearized(q, z, p, MeshMap{});
    CHECK(linf(rate.eta) == 0.0);
    CHECK(linf(rate.phi) == 0.0);
}

TEST_CASE("linearized rhs about the flat state matches the analytic system") {
    const int M = 64;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    p.g = 1.3;
    SurfaceState rest{Field::Zero(M), Field::Zero(M)};
    for (int k : {1, 3}) {
        TangentState t{(k * x).cos(), Field::Zero(M)};
        const TangentState rate = rhs_linearized(rest, t, p, MeshMap{});
        CHECK(linf(rate.eta) < 1e-12);
        CHECK(linf(rate.phi + p.g * (k * x).cos()) < 1e-12);
        // and the conjugate pairing: d/dt eta_dot = G phi_dot
        TangentState s{Field::Zero(M), (k * x).cos()};
        const TangentState rate2 = rhs_linearized(rest, s, p, MeshMap{});
        CHECK(linf(rate2.eta - double(k) * (k * x).cos()) < 1e-11);
        CHECK(linf(rate2.phi) < 1e-12);
    }
}

TEST_CASE("linearized rhs is additive and homogeneous") {
    const int M = 64;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    p.sigma_rho = 0.01;
    SurfaceState q{0.08 * x.cos() + 0.01 * (3 * x).sin(), 0.05 * x.sin()};
    StageContext ctx = make_stage(q, MeshMap{}, p);
    TangentState t1{0.3 * (2 * x).cos(), 0.1 * x.sin()};
    TangentState t2{-0.2 * x.sin(), 0.7 * (4 * x).cos()};
    const TangentState r1 = rhs_linearized(ctx, t1);
    const TangentState r2 = rhs_linearized(ctx, t2);
    TangentState sum{2.0 * t1.eta + t2.eta, 2.0 * t1.phi + t2.phi};
    const TangentState rs = rhs_linearized(ctx, sum);
    CHECK(linf(rs.eta - (2.0 * r1.eta + r2.eta)) < 1e-13);
    CHECK(linf(rs.phi - (2.0 * r1.phi + r2.phi)) < 1e-13);
}

TEST_CASE("linearized rhs matches centered differences of the nonlinear rhs") {
    const int M = 96;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    SurfaceState q{0.1 * x.cos() + 0.02 * (2 * x).cos(), 0.08 * x.sin()};
    TangentState t{0.5 * (2 * x).cos(), 0.4 * x.cos()};
    StageContext ctx = make_stage(q, MeshMap{}, p);
    const TangentState lin = rhs_linearized(ctx, t);

    auto fd_error = [&](double eps) {
        SurfaceState qp{q.eta + eps * t.eta, q.phi + eps * t.phi};
        SurfaceState qm{q.eta - eps * t.eta, q.phi - eps * t.phi};
        const SurfaceState rp = rhs_nonlinear(qp, p, MeshMap{});
        const SurfaceState rm = rhs_nonlinear(qm, p, MeshMap{});
        const Field de = (rp.eta - rm.eta) / (2 * eps) - lin.eta;
        const Field dp = (rp.phi - rm.phi) / (2 * eps) - lin.phi;
        return std::max(linf(de), linf(dp));
    };
    const double e3 = fd_error(1e-3);
    const double e4 = fd_error(1e-4);
    const double slope = std::log10(e3 / e4);
    CHECK(slope >= 1.9);
}

TEST_CASE("P-projection and mass conservation of the rates") {
    const int M = 96;
    MeshMap map(2, 0.4);
    const Eigen::ArrayXd a = grid_nodes(M);
    Field eta(M), phi(M);
    for (int i = 0; i < M; ++i) {
        const double x = map.xi(a[i]);
        eta[i] = 0.1 * std::cos(x);
        phi[i] = 0.07 * std::sin(x) + 0.02 * std::cos(2 * x);
    }
    PhysParams p;
    StageContext ctx = make_stage(SurfaceState{eta, phi}, map, p);
    const SurfaceState rate = rhs_nonlinear(ctx);
    CHECK(std::abs(ctx.mean_x(rate.phi)) < 1e-14);
    CHECK(std::abs(ctx.mean_x(rate.eta)) < 1e-11);
}

TEST_CASE("energy: zero at rest, quadratic in amplitude") {
    const int M = 64;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    CHECK(std::abs(energy(SurfaceState{Field::Zero(M), Field::Zero(M)}, p, MeshMap{})) < 1e-15);
    const double e1 = energy(SurfaceState{0.001 * x.cos(), Field::Zero(M)}, p, MeshMap{});
    const double e2 = energy(SurfaceState{0.002 * x.cos(), Field::Zero(M)}, p, MeshMap{});
    CHECK(e1 > 0.0);
    CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("crest acceleration: flat state, linear law, and rest precondition") {
    const int M = 64;
    const Eigen::ArrayXd x = grid_nodes(M);
    PhysParams p;
    CHECK(std::abs(crest_acceleration(SurfaceState{Field::Zero(M), Field::Zero(M)}, p,
                                      MeshMap{})) < 1e-13);
    const double a = 1e-4;
    const double ac = crest_acceleration(SurfaceState{a * x.cos(), Field::Zero(M)}, p, MeshMap{});
    CHECK(ac == doctest::Approx(a).epsilon(1e-3));
    CHECK_THROWS_AS(
        crest_acceleration(SurfaceState{a * x.cos(), Field::Constant(M, 1e-3)}, p, MeshMap{}),
        ConfigError);
}

TEST_CASE("wave height conventions") {
    const int M = 64;
    const Eigen::ArrayXd x = grid_nodes(M);
    const double a = 0.3;
    const WaveHeight h = wave_height(SurfaceState{a * x.cos(), Field::Zero(M)});
    CHECK(h.full == doctest::Approx(2 * a).epsilon(1e-12));
    CHECK(h.half == doctest::Approx(a).epsilon(1e-12));
    CHECK(h.crest == doctest::Approx(a).epsilon(1e-12));
}
