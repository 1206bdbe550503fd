// The Kermack-McKendrick system on the torus: parameter bookkeeping for the
// dimensional -> nondimensional change of variables, the Duhamel integral
// operators (T1, T2), and the mass-balance diagnostic.
//
// Sign convention for the recovery term: the v-equation reads
//   v_t = v_xx + u v + sigma * mu * v
// with sigma = +1 under MuSign::paper (equation (1.3) exactly as printed) and
// sigma = -1 under MuSign::epidemiological (the sign structure inherited from
// the dimensional I-equation).

#pragma once

#include <optional>
#include <vector>

#include "kmlab/grid.hpp"
#include "kmlab/spaces.hpp"

namespace kmlab {

enum class MuSign { paper, epidemiological };

inline double mu_term_sign(MuSign m) { return m == MuSign::paper ? 1.0 : -1.0; }

struct KmParams {
    double mu = 0.0;
    MuSign mu_sign = MuSign::paper;
    std::optional<double> beta;
    std::optional<double> d_s;
    std::optional<double> d_i;

    void validate() const {
        if (!(mu >= 0.0)) throw std::invalid_argument("KmParams: mu must be nonnegative");
        for (const auto& v : {beta, d_s, d_i})
            if (v && !(*v > 0.0))
                throw std::invalid_argument("KmParams: dimensional rates must be positive");
    }
};

struct KmState {
    RealField u;  // susceptible density
    RealField v;  // infected density
};

struct Trajectory {
    std::vector<double> times;  // uniform, times[0] = 0
    std::vector<KmState> states;
    KmParams params;
    SobolevIndex idx;

    void validate() const;
    double dt() const { return times[1] - times[0]; }
    double horizon() const { return times.back(); }

    FieldTrajectory component_u() const;
    FieldTrajectory component_v() const;
};

Trajectory zero_trajectory(const GridSpec& grid, const KmParams& params, const SobolevIndex& idx,
                           double T, int n_t);

// Coordinate/time scaling bookkeeping for u(x,t) = S(x sqrt(D_S/beta), t/beta).
// The caller supplies fields already sampled on the target grid; this records
// the scale factors and relabels the recovery coefficient as mu_eff = mu*beta.
struct NondimensionalData {
    RealField phi;
    RealField psi;
    double mu_eff = 0.0;
    double space_scale_s = 1.0;  // x_dimensional = space_scale_s * x
    double space_scale_i = 1.0;
    double time_scale = 1.0;  // t_dimensional = time_scale * t
};

NondimensionalData nondimensionalize(const RealField& S0, const RealField& I0,
                                     const KmParams& params);

// Inverse bookkeeping; recovers (S0, I0, mu) from the nondimensional statement.
struct DimensionalData {
    RealField S0;
    RealField I0;
    double mu = 0.0;
};

DimensionalData dimensionalize(const NondimensionalData& nd, const KmParams& params);

// One application of the Duhamel map T = (T1, T2) to the stored trajectory:
//   T1 = S(t)phi - int_0^t S(t-t')(uv) dt'
//   T2 = S(t)psi + int_0^t S(t-t')(uv + sigma*mu*v) dt'
// The linear part uses the heat multiplier at exactly t_n; the integral uses
// composite trapezoid quadrature over the stored slices; products uv are
// dealiased by the 2/3 rule.
Trajectory duhamel_apply(const Trajectory& traj, const RealField& phi, const RealField& psi);

// Central-difference d/dt of int(u+v)dx minus sigma*mu*int(v)dx at each
// interior slice; O(dt^2) for consistent trajectories.
std::vector<double> mass_balance_residual(const Trajectory& traj);

}  // namespace kmlab
