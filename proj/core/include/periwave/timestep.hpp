#pragma once

#include "periwave/dynamics.hpp"
#include "periwave/mesh.hpp"
#include "periwave/state.hpp"

#include <vector>

namespace periwave {

enum class Scheme { RK5, RK8 };
const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct Checkpoint {
    double t;
    SurfaceState state;
    MeshMap map;
};

struct Trajectory {
    Scheme scheme = Scheme::RK8;
    double horizon = 0.0;
    std::vector<Checkpoint> checkpoints; // segment boundaries, t = 0 and t = horizon included

    const SurfaceState& final_state() const { return checkpoints.back().state; }
    const MeshMap& final_map() const { return checkpoints.back().map; }
};

struct EvolveOptions {
    bool filter_each_step = true;
};

/// Advance the nonlinear system with N_l uniform steps per segment,
/// filtering after each completed step and regridding between segments.
Trajectory evolve(const SurfaceState& q0, double horizon, const MeshSchedule& schedule,
                  const PhysParams& params, Scheme scheme, const EvolveOptions& opts = {});

struct TangentEvolveResult {
    Trajectory base;
    TangentBatch tangents; // columns at t = horizon, on the final grid
};

/// Integrate the linearized system for every tangent column alongside the
/// base state. Kernels are assembled once per Runge-Kutta stage and shared
/// across columns; results are independent of how columns are batched.
TangentEvolveResult evolve_tangents(const SurfaceState& q0, const TangentBatch& tangents,
                                    double horizon, const MeshSchedule& schedule,
                                    const PhysParams& params, Scheme scheme,
                                    const EvolveOptions& opts = {});

/// Butcher tableau row-sum identity, exposed for validation tests.
void check_tableau_consistency(Scheme s, double tol);

} // namespace periwave
