#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <periwave/errors.hpp>
#include <periwave/mesh.hpp>

#include <cmath>
#include <numbers>

using namespace periwave;

namespace {
constexpr double pi = std::numbers::pi;

// quadrature oracle for xi: composite Simpson on the density
double xi_by_quadrature(const MeshMap& map, double a, int panels = 20000) {
    double sum = 0.0;
    const double h = a / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = i * h;
        sum += h / 6.0 *
               (map.density(lo) + 4.0 * map.density(lo + 0.5 * h) + map.density(lo + h));
    }
    return sum;
}
} // namespace

TEST_CASE("kappa = 0 is the identity map") {
    MeshMap m(0, 0.3);
    for (double a : {0.0, 0.7, pi, 5.1, 2 * pi}) {
        CHECK(m.xi(a) == a);
        CHECK(m.density(a) == 1.0);
    }
}

TEST_CASE("rho = 1 forces the identity map for any kappa") {
    for (int kappa : {-3, 2, 5}) {
        MeshMap m(kappa, 1.0);
        CHECK(m.is_uniform());
        CHECK(m.xi(1.234) == 1.234);
    }
}

TEST_CASE("kappa = 2, rho = 0.15: normalization and density ratio") {
    MeshMap m(2, 0.15);
    CHECK(std::abs(m.xi(2 * pi) - 2 * pi) < 1e-13);
    CHECK(std::abs(m.xi(0.0)) < 1e-15);
    // refinement near x = pi: density ratio E(0)/E(pi) = 1/rho
    CHECK(m.density(0.0) / m.density(pi) == doctest::Approx(1.0 / 0.15).epsilon(1e-10));
    // closed form against the quadrature oracle
    for (double a : {0.9, 2.2, 4.0, 5.9}) {
        CHECK(std::abs(m.xi(a) - xi_by_quadrature(m, a)) < 1e-11);
    }
}

TEST_CASE("negative kappa refines near x = 0") {
    MeshMap m(-2, 0.2);
    CHECK(std::abs(m.xi(2 * pi) - 2 * pi) < 1e-13);
    CHECK(m.density(pi) / m.density(0.0) == doctest::Approx(1.0 / 0.2).epsilon(1e-10));
}

TEST_CASE("xi is strictly increasing") {
    for (auto [kappa, rho] : {std::pair{2, 0.15}, {2, 0.5}, {-2, 0.2}, {3, 0.35}, {1, 0.9}}) {
        MeshMap m(kappa, rho);
        const int n = 10000;
        double prev = m.xi(0.0);
        bool monotone = true;
        for (int i = 1; i <= n; ++i) {
            const double cur = m.xi(2 * pi * i / n);
            if (!(cur > prev)) monotone = false;
            prev = cur;
        }
        CHECK(monotone);
    }
}

TEST_CASE("xi_inverse inverts xi to 1e-14") {
    MeshMap m(2, 0.15);
    for (double a : {0.0, 0.3, 1.9, pi, 4.4, 6.2}) {
        const double x = m.xi(a);
        CHECK(std::abs(m.xi(m.xi_inverse(x)) - x) <= 1e-14);
    }
}

TEST_CASE("invalid rho rejected") {
    CHECK_THROWS_AS(MeshMap(2, 0.0), ConfigError);
    CHECK_THROWS_AS(MeshMap(2, 1.5), ConfigError);
}

TEST_CASE("schedule validation") {
    MeshSchedule s = MeshSchedule::uniform(64, 100);
    CHECK_NOTHROW(s.validate());
    s.segments[0].theta = 0.5;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.segments[0].theta = 1.0;
    s.segments[0].grid = 63;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("regrid: identity maps and equal size is a no-op") {
    const int M = 32;
    const Eigen::ArrayXd x = grid_nodes(M);
    const Field f = (3.0 * x).cos();
    const Field g = regrid(f, MeshMap{}, MeshMap{}, M);
    CHECK((f - g).abs().maxCoeff() == 0.0);
}

TEST_CASE("regrid recovers an analytic target on the new grid") {
    // f sampled on a graded grid as cos(xi(alpha)); on the uniform grid the
    // values must be cos(x).
    const int M = 64;
    MeshMap from(2, 0.3);
    const Eigen::ArrayXd a = grid_nodes(M);
    Field f(M);
    for (int i = 0; i < M; ++i) f[i] = std::cos(from.xi(a[i]));
    const Field g = regrid(f, from, MeshMap{}, M);
    Field expect(M);
    for (int i = 0; i < M; ++i) expect[i] = std::cos(a[i]);
    CHECK((g - expect).abs().maxCoeff() < 1e-12);
}

TEST_CASE("regrid round trip returns the original field") {
    const int M = 96;
    MeshMap from(2, 0.25), to(-2, 0.4);
    const Eigen::ArrayXd a = grid_nodes(M);
    Field f(M);
    for (int i = 0; i < M; ++i)
        f[i] = std::cos(from.xi(a[i])) + 0.3 * std::sin(2.0 * from.xi(a[i]));
    const Field there = regrid(f, from, to, M);
    const Field back = regrid(there, to, from, M);
    CHECK((back - f).abs().maxCoeff() < 1e-10);
}
