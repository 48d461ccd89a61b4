#pragma once

#include "periwave/dno.hpp"
#include "periwave/mesh.hpp"
#include "periwave/state.hpp"

#include <memory>

namespace periwave {

/// Everything that is shared at one time instant when evaluating the
/// right-hand sides: the frozen geometry, the factorized Dirichlet-Neumann
/// operator, and the base-state surface traces. Immutable once built, so a
/// batch of tangent columns can be evaluated concurrently against it.
struct StageContext {
    PhysParams params;
    SurfaceGeometry geom;
    std::shared_ptr<const DnoOperator> dno;
    Field u, v;        // phi_x, phi_y at the surface
    Field varphi_x;    // d/dx of the surface potential
    Field eta_t;       // v - eta_x u
    Field metric;      // 1 + eta_x^2
    Field metric32;    // (1 + eta_x^2)^{3/2}

    /// x-average (1/2pi) int f dx = (1/M) sum f_i xi'_i on this grid.
    double mean_x(const Field& f) const;
    Field project_zero_mean(const Field& f) const;
};

StageContext make_stage(const SurfaceState& q, const MeshMap& map, const PhysParams& params);

/// Rates (eta_t, varphi_t) of the nonlinear evolution.
SurfaceState rhs_nonlinear(const StageContext& ctx);
SurfaceState rhs_nonlinear(const SurfaceState& q, const PhysParams& params, const MeshMap& map);

/// Rates of the linearized evolution for a batch of tangents sharing ctx.
void rhs_linearized_batch(const StageContext& ctx, const TangentBatch& in, TangentBatch& out);
TangentState rhs_linearized(const StageContext& ctx, const TangentState& qdot);
TangentState rhs_linearized(const SurfaceState& q, const TangentState& qdot,
                            const PhysParams& params, const MeshMap& map);

/// Conserved energy (kinetic + gravitational + capillary), used as a
/// time-stepper diagnostic. eta is measured from its x-mean.
double energy(const SurfaceState& q, const PhysParams& params, const MeshMap& map);

/// Downward crest acceleration relative to g, evaluated at a rest state
/// (phi identically 0 within 1e-10).
double crest_acceleration(const SurfaceState& q_at_rest, const PhysParams& params,
                          const MeshMap& map);

struct WaveHeight {
    double full;  // crest-to-trough
    double half;  // deep-water convention
    double crest; // max eta (height above bottom in finite depth)
};
WaveHeight wave_height(const SurfaceState& q_at_rest);

} // namespace periwave
