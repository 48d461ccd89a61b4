#include "periwave/timestep.hpp"

#include "periwave/errors.hpp"

#include <cmath>
#include <string>

namespace periwave {

namespace {

struct Tableau {
    int stages;
    std::vector<double> c;
    std::vector<std::vector<double>> a; // strictly lower triangular rows
    std::vector<double> b;
};

// Dormand-Prince 5(4), used as a fixed-step 5th-order method (the FSAL
// stage carries zero weight and is dropped).
const Tableau& tableau_rk5() {
    static const Tableau t{
        6,
        {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0},
        {
            {},
            {1.0 / 5},
            {3.0 / 40, 9.0 / 40},
            {44.0 / 45, -56.0 / 15, 32.0 / 9},
            {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
            {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        },
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    return t;
}

// Dormand-Prince 8th order (the 12-stage advancing method of DOP853).
const Tableau& tableau_rk8() {
    static const Tableau t{
        12,
        {0.0,
         5.26001519587677318785587544488e-2,
         7.89002279381515978178381316732e-2,
         1.18350341907227396726757197510e-1,
         2.81649658092772603273242802490e-1,
         1.0 / 3.0,
         1.0 / 4.0,
         3.07692307692307692307692307692e-1,
         6.51282051282051282051282051282e-1,
         6.0 / 10.0,
         6.0 / 7.0,
         1.0},
        {
            {},
            {5.26001519587677318785587544488e-2},
            {1.97250569845378994544595329183e-2, 5.91751709536136983633785987549e-2},
            {2.95875854768068491816892993775e-2, 0.0, 8.87627564304205475450678981324e-2},
            {2.41365134159266685502369798665e-1, 0.0, -8.84549479328286085344864962717e-1,
             9.24834003261792003115737966543e-1},
            {3.70370370370370370370370370370e-2, 0.0, 0.0, 1.70828608729473871279604482173e-1,
             1.25467687566822425016691814123e-1},
            {3.7109375e-2, 0.0, 0.0, 1.70252211019544039314978060272e-1,
             6.02165389804559606850219397283e-2, -1.7578125e-2},
            {3.70920001185047927108779319836e-2, 0.0, 0.0, 1.70383925712239993810214054705e-1,
             1.07262030446373284651809199168e-1, -1.53194377486244017527936158236e-2,
             8.27378916381402288758473766002e-3},
            {6.24110958716075717114429577812e-1, 0.0, 0.0, -3.36089262944694129406857109825,
             -8.68219346841726006818189891453e-1, 2.75920996994467083049415600797e+1,
             2.01540675504778934086186788979e+1, -4.34898841810699588477366255144e+1},
            {4.77662536438264365890433908527e-1, 0.0, 0.0, -2.48811461997166764192642586468,
             -5.90290826836842996371446475743e-1, 2.12300514481811942347288949897e+1,
             1.52792336328824235832596922938e+1, -3.32882109689848629194453265587e+1,
             -2.03312017085086261358222928593e-2},
            {-9.37142430085987325717040216580e-1, 0.0, 0.0, 5.18637242884406370830023853209,
             1.09143734899672957818500254654, -8.14978701074692612513997267357,
             -1.85200656599969598641566180701e+1, 2.27394870993505042818970056734e+1,
             2.49360555267965238987089396762, -3.04676447189821950038236690220},
            {2.27331014751653820792359768449, 0.0, 0.0, -1.05344954667372501984066689879e+1,
             -2.00087205822486249909675718444, -1.79589318631187989172765950534e+1,
             2.79488845294199600508499808837e+1, -2.85899827713502369474065508674,
             -8.87285693353062954433549289258, 1.23605671757943030647266201528e+1,
             6.43392746015763530355970484046e-1},
        },
        {5.42937341165687622380535766363e-2, 0.0, 0.0, 0.0, 0.0, 4.45031289275240888144113950566,
         1.89151789931450038304281599044, -5.80120396001058478146721142270,
         3.11164366957819894408916062370e-1, -1.52160949662516078556178806805e-1,
         2.01365400804030348374776537501e-1, 4.47106157277725905176885569043e-2},
    };
    return t;
}

const Tableau& tableau(Scheme s) { return s == Scheme::RK5 ? tableau_rk5() : tableau_rk8(); }

void check_finite(const SurfaceState& q, const TangentBatch* B, long step) {
    if (!q.eta.isFinite().all() || !q.phi.isFinite().all())
        throw BlowUpError("evolve: non-finite base state after step " + std::to_string(step),
                          step);
    if (B && (!B->eta.allFinite() || !B->phi.allFinite()))
        throw BlowUpError("evolve: non-finite tangent state after step " + std::to_string(step),
                          step);
}

TangentEvolveResult evolve_core(SurfaceState q, TangentBatch B, bool with_tangents,
                                double horizon, const MeshSchedule& schedule,
                                const PhysParams& params, Scheme scheme,
                                const EvolveOptions& opts) {
    schedule.validate();
    params.validate();
    if (!(horizon > 0.0)) throw ConfigError("evolve: horizon must be positive");
    if (q.eta.size() != schedule.segments.front().grid)
        throw ConfigError("evolve: initial state grid " + std::to_string(q.eta.size()) +
                          " does not match segment 1 grid " +
                          std::to_string(schedule.segments.front().grid));
    if (with_tangents && B.rows() != q.eta.size())
        throw ConfigError("evolve: tangent grid does not match state grid");

    const Tableau& tb = tableau(scheme);
    Trajectory traj{scheme, horizon, {}};
    long global_step = 0;
    double theta_done = 0.0;

    for (size_t l = 0; l < schedule.segments.size(); ++l) {
        const Segment& seg = schedule.segments[l];
        if (l > 0) {
            const MeshMap& prev = schedule.segments[l - 1].map;
            q.eta = regrid(q.eta, prev, seg.map, seg.grid);
            q.phi = regrid(q.phi, prev, seg.map, seg.grid);
            if (with_tangents) {
                TangentBatch Bn = TangentBatch::zero(seg.grid, B.cols());
                for (Eigen::Index c = 0; c < B.cols(); ++c) {
                    Bn.eta.col(c) = regrid(B.eta.col(c).array(), prev, seg.map, seg.grid).matrix();
                    Bn.phi.col(c) = regrid(B.phi.col(c).array(), prev, seg.map, seg.grid).matrix();
                }
                B = std::move(Bn);
            }
        }
        traj.checkpoints.push_back({horizon * theta_done, q, seg.map});

        const double dt = seg.theta * horizon / seg.steps;
        std::vector<SurfaceState> k(tb.stages);
        std::vector<TangentBatch> kt(with_tangents ? tb.stages : 0);

        for (int step = 0; step < seg.steps; ++step) {
            for (int i = 0; i < tb.stages; ++i) {
                SurfaceState qs = q;
                for (int j = 0; j < i; ++j) {
                    const double w = tb.a[i][j];
                    if (w == 0.0) continue;
                    qs.eta += dt * w * k[j].eta;
                    qs.phi += dt * w * k[j].phi;
                }
                StageContext ctx = make_stage(qs, seg.map, params);
                if (with_tangents) {
                    TangentBatch Bs = B;
                    for (int j = 0; j < i; ++j) {
                        const double w = tb.a[i][j];
                        if (w == 0.0) continue;
                        Bs.eta += dt * w * kt[j].eta;
                        Bs.phi += dt * w * kt[j].phi;
                    }
                    rhs_linearized_batch(ctx, Bs, kt[i]);
                }
                k[i] = rhs_nonlinear(ctx);
            }
            for (int i = 0; i < tb.stages; ++i) {
                const double w = tb.b[i];
                if (w == 0.0) continue;
                q.eta += dt * w * k[i].eta;
                q.phi += dt * w * k[i].phi;
                if (with_tangents) {
                    B.eta += dt * w * kt[i].eta;
                    B.phi += dt * w * kt[i].phi;
                }
            }
            if (opts.filter_each_step) {
                q.eta = filter36(q.eta);
                q.phi = filter36(q.phi);
                if (with_tangents) {
                    filter36_columns(B.eta);
                    filter36_columns(B.phi);
                }
            }
            ++global_step;
            check_finite(q, with_tangents ? &B : nullptr, global_step);
        }
        theta_done += seg.theta;
    }
    traj.checkpoints.push_back({horizon * theta_done, q, schedule.segments.back().map});
    return {std::move(traj), std::move(B)};
}

} // namespace

const char* scheme_name(Scheme s) { return s == Scheme::RK5 ? "rk5" : "rk8"; }

Scheme scheme_from_name(const std::string& name) {
    if (name == "rk5" || name == "5d") return Scheme::RK5;
    if (name == "rk8" || name == "8d") return Scheme::RK8;
    throw ConfigError("unknown scheme '" + name + "' (expected rk5 or rk8)");
}

Trajectory evolve(const SurfaceState& q0, double horizon, const MeshSchedule& schedule,
                  const PhysParams& params, Scheme scheme, const EvolveOptions& opts) {
    return evolve_core(q0, TangentBatch{}, false, horizon, schedule, params, scheme, opts).base;
}

TangentEvolveResult evolve_tangents(const SurfaceState& q0, const TangentBatch& tangents,
                                    double horizon, const MeshSchedule& schedule,
                                    const PhysParams& params, Scheme scheme,
                                    const EvolveOptions& opts) {
    return evolve_core(q0, tangents, true, horizon, schedule, params, scheme, opts);
}

void check_tableau_consistency(Scheme s, double tol) {
    const Tableau& tb = tableau(s);
    double bsum = 0.0;
    for (double w : tb.b) bsum += w;
    if (std::abs(bsum - 1.0) > tol)
        throw NumericError("tableau: weights sum to " + std::to_string(bsum));
    for (int i = 0; i < tb.stages; ++i) {
        double rs = 0.0;
        for (double w : tb.a[i]) rs += w;
        if (std::abs(rs - tb.c[i]) > tol)
            throw NumericError("tableau: row " + std::to_string(i) + " sum " +
                               std::to_string(rs) + " != c = " + std::to_string(tb.c[i]));
    }
}

} // namespace periwave
