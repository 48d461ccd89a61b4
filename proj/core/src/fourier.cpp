#include "periwave/fourier.hpp"

#include "periwave/errors.hpp"
#include "periwave/parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace periwave {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Per-thread plan cache. FFTW planning is serialized; execution on
// thread-private buffers is safe.
struct PlanSet {
    int M = 0;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    ~PlanSet() {
        if (M == 0) return;
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(c2r);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }
};

PlanSet& plans_for(int M) {
    thread_local std::vector<std::unique_ptr<PlanSet>> cache;
    for (auto& p : cache)
        if (p->M == M) return *p;
    auto p = std::make_unique<PlanSet>();
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        p->rbuf = fftw_alloc_real(M);
        p->cbuf = fftw_alloc_complex(M / 2 + 1);
        p->r2c = fftw_plan_dft_r2c_1d(M, p->rbuf, p->cbuf, FFTW_ESTIMATE);
        p->c2r = fftw_plan_dft_c2r_1d(M, p->cbuf, p->rbuf, FFTW_ESTIMATE);
    }
    p->M = M;
    cache.push_back(std::move(p));
    return *cache.back();
}

void require_even(Eigen::Index M, const char* op) {
    if (M < 2 || M % 2 != 0)
        throw ConfigError(std::string(op) + ": grid size must be even and positive, got " +
                          std::to_string(M));
}

} // namespace

Eigen::ArrayXd grid_nodes(int M) {
    require_even(M, "grid_nodes");
    return Eigen::ArrayXd::LinSpaced(M, 0.0, 2.0 * std::numbers::pi * (M - 1) / M);
}

Coeffs analyze(const Field& f) {
    const int M = static_cast<int>(f.size());
    require_even(M, "analyze");
    PlanSet& p = plans_for(M);
    for (int i = 0; i < M; ++i) p.rbuf[i] = f[i];
    fftw_execute(p.r2c);
    Coeffs c(M / 2 + 1);
    const double scale = 1.0 / M;
    for (int k = 0; k <= M / 2; ++k)
        c[k] = std::complex<double>(p.cbuf[k][0] * scale, p.cbuf[k][1] * scale);
    return c;
}

Field synthesize(const Coeffs& c) {
    const int M = 2 * (static_cast<int>(c.size()) - 1);
    require_even(M, "synthesize");
    PlanSet& p = plans_for(M);
    for (int k = 0; k <= M / 2; ++k) {
        p.cbuf[k][0] = c[k].real();
        p.cbuf[k][1] = c[k].imag();
    }
    fftw_execute(p.c2r);
    Field f(M);
    for (int i = 0; i < M; ++i) f[i] = p.rbuf[i];
    return f;
}

Field derivative(const Field& f) {
    Coeffs c = analyze(f);
    const int half = static_cast<int>(c.size()) - 1;
    for (int k = 0; k < half; ++k) c[k] *= std::complex<double>(0.0, k);
    c[half] = 0.0;
    return synthesize(c);
}

Field hilbert_transform(const Field& f) {
    Coeffs c = analyze(f);
    const int half = static_cast<int>(c.size()) - 1;
    c[0] = 0.0;
    for (int k = 1; k < half; ++k) c[k] *= std::complex<double>(0.0, -1.0);
    c[half] = 0.0;
    return synthesize(c);
}

double filter36_multiplier(int k, int M) {
    const double r = static_cast<double>(std::abs(k)) / (M / 2);
    return std::exp(-36.0 * std::pow(r, 36));
}

Field filter36(const Field& f) {
    const int M = static_cast<int>(f.size());
    Coeffs c = analyze(f);
    for (int k = 0; k <= M / 2; ++k) c[k] *= filter36_multiplier(k, M);
    return synthesize(c);
}

Field upsample(const Field& f, int factor) {
    const int M = static_cast<int>(f.size());
    const int N = factor * M;
    Coeffs c = analyze(f);
    Coeffs fine = Coeffs::Zero(N / 2 + 1);
    fine.head(M / 2) = c.head(M / 2);
    fine[M / 2] = 0.5 * c[M / 2]; // Nyquist splits across +-M/2 on the fine grid
    return synthesize(fine);
}

double eval_interpolant(const Coeffs& c, double alpha) {
    const int half = static_cast<int>(c.size()) - 1;
    double out = c[0].real();
    for (int k = 1; k < half; ++k) {
        const double ka = k * alpha;
        out += 2.0 * (c[k].real() * std::cos(ka) - c[k].imag() * std::sin(ka));
    }
    out += c[half].real() * std::cos(half * alpha);
    return out;
}

void filter36_columns(Eigen::MatrixXd& cols) {
    const int M = static_cast<int>(cols.rows());
    Eigen::ArrayXd mult(M / 2 + 1);
    for (int k = 0; k <= M / 2; ++k) mult[k] = filter36_multiplier(k, M);
    parallel_for(cols.cols(), [&](long j) {
        Coeffs c = analyze(cols.col(j).array());
        for (int k = 0; k <= M / 2; ++k) c[k] *= mult[k];
        cols.col(j) = synthesize(c).matrix();
    });
}

void derivative_columns(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
    out.resize(in.rows(), in.cols());
    parallel_for(in.cols(), [&](long j) {
        out.col(j) = derivative(in.col(j).array()).matrix();
    });
}

void hilbert_columns(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
    out.resize(in.rows(), in.cols());
    parallel_for(in.cols(), [&](long j) {
        out.col(j) = hilbert_transform(in.col(j).array()).matrix();
    });
}

} // namespace periwave
