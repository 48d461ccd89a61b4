#include "periwave/mesh.hpp"

#include "periwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace periwave {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

MeshMap::MeshMap(int kappa, double rho) : kappa_(kappa), rho_(rho) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw ConfigError("MeshMap: rho must lie in (0, 1], got " + std::to_string(rho));
    if (kappa == 0 || rho == 1.0) return;

    const int m = std::abs(kappa);
    // sin^{2m}(a/2) = mu + sum_j 2 (-1)^j C(2m, m+j)/4^m cos(j a); for
    // cos^{2m}(a/2) the (-1)^j is absent. mu = C(2m, m)/4^m.
    Eigen::ArrayXd binom(m + 1); // C(2m, m+j)/4^m for j = 0..m
    binom[0] = 1.0;
    for (int i = 1; i <= 2 * m; ++i) binom[0] *= 0.5 * i / ((i <= m) ? i : (i - m));
    // binom[0] = C(2m,m)/4^m via product form; fill the rest by ratio.
    for (int j = 1; j <= m; ++j) binom[j] = binom[j - 1] * (m - j + 1.0) / (m + j);
    const double mu = binom[0];
    const double A = (1.0 - rho) / (1.0 - mu * (1.0 - rho));

    cos_coeffs_.resize(m);
    for (int j = 1; j <= m; ++j) {
        const double s_j = 2.0 * binom[j] * ((kappa > 0 && j % 2 != 0) ? -1.0 : 1.0);
        cos_coeffs_[j - 1] = -A * s_j;
    }
}

double MeshMap::density(double a) const {
    double E = 1.0;
    for (int j = 1; j <= cos_coeffs_.size(); ++j) E += cos_coeffs_[j - 1] * std::cos(j * a);
    return E;
}

double MeshMap::density_prime(double a) const {
    double d = 0.0;
    for (int j = 1; j <= cos_coeffs_.size(); ++j) d -= cos_coeffs_[j - 1] * j * std::sin(j * a);
    return d;
}

double MeshMap::xi(double a) const {
    double x = a;
    for (int j = 1; j <= cos_coeffs_.size(); ++j) x += cos_coeffs_[j - 1] / j * std::sin(j * a);
    return x;
}

double MeshMap::xi_inverse(double x) const {
    if (is_uniform()) return x;
    double lo = 0.0, hi = two_pi;
    double b = std::clamp(x, lo, hi);
    for (int it = 0; it < 50; ++it) {
        const double r = xi(b) - x;
        if (std::abs(r) <= 1e-14) return b;
        if (r > 0.0) hi = b; else lo = b;
        const double step = r / density(b);
        double next = b - step;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi); // bisection fallback
        b = next;
    }
    throw NumericError("MeshMap::xi_inverse: no convergence at x = " + std::to_string(x));
}

void MeshSchedule::validate() const {
    if (segments.empty()) throw ConfigError("MeshSchedule: no segments");
    double total = 0.0;
    for (size_t l = 0; l < segments.size(); ++l) {
        const Segment& s = segments[l];
        if (!(s.theta > 0.0))
            throw ConfigError("MeshSchedule: segment " + std::to_string(l) + " has theta <= 0");
        if (s.steps < 1)
            throw ConfigError("MeshSchedule: segment " + std::to_string(l) + " has no steps");
        if (s.grid < 16 || s.grid % 2 != 0)
            throw ConfigError("MeshSchedule: segment " + std::to_string(l) +
                              " grid must be even and >= 16, got " + std::to_string(s.grid));
        total += s.theta;
    }
    if (std::abs(total - 1.0) > 1e-14)
        throw ConfigError("MeshSchedule: segment durations sum to " + std::to_string(total) +
                          ", expected 1");
}

MeshSchedule MeshSchedule::uniform(int grid, int steps) {
    MeshSchedule s;
    s.segments.push_back(Segment{1.0, steps, grid, MeshMap{}});
    return s;
}

Field regrid(const Field& f, const MeshMap& from, const MeshMap& to, int grid_new) {
    const int M = static_cast<int>(f.size());
    if (from == to && grid_new == M) return f;
    const Coeffs c = analyze(f);
    Field out(grid_new);
    for (int j = 0; j < grid_new; ++j) {
        const double aj = two_pi * j / grid_new;
        double beta;
        try {
            beta = from.xi_inverse(to.xi(aj));
        } catch (const NumericError& e) {
            throw NumericError("regrid: node " + std::to_string(j) + ": " + e.what());
        }
        out[j] = eval_interpolant(c, beta);
    }
    return out;
}

} // namespace periwave
