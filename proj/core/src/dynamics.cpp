#include "kmlab/dynamics.hpp"

#include <cmath>

#include "kmlab/spectral.hpp"

namespace kmlab {

void Trajectory::validate() const {
    if (times.size() < 2 || times.size() != states.size())
        throw std::invalid_argument("Trajectory: need >= 2 slices with matching times");
    if (times.front() != 0.0) throw std::invalid_argument("Trajectory: times must start at 0");
    const double step = times[1] - times[0];
    for (size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("Trajectory: times must be strictly increasing");
        if (std::abs((times[i] - times[i - 1]) - step) > 1e-9 * step)
            throw std::invalid_argument("Trajectory: time grid must be uniform");
    }
    const GridSpec& g = states.front().u.grid;
    for (const auto& st : states)
        if (!(st.u.grid == g) || !(st.v.grid == g))
            throw std::invalid_argument("Trajectory: all states must share one grid");
}

FieldTrajectory Trajectory::component_u() const {
    FieldTrajectory f;
    f.times = times;
    f.slices.reserve(states.size());
    for (const auto& st : states) f.slices.push_back(st.u);
    return f;
}

FieldTrajectory Trajectory::component_v() const {
    FieldTrajectory f;
    f.times = times;
    f.slices.reserve(states.size());
    for (const auto& st : states) f.slices.push_back(st.v);
    return f;
}

Trajectory zero_trajectory(const GridSpec& grid, const KmParams& params, const SobolevIndex& idx,
                           double T, int n_t) {
    if (!(T > 0.0) || n_t < 2) throw std::invalid_argument("zero_trajectory: need T > 0, n_t >= 2");
    Trajectory traj;
    traj.params = params;
    traj.idx = idx;
    traj.times.resize(static_cast<size_t>(n_t) + 1);
    traj.states.resize(static_cast<size_t>(n_t) + 1, KmState{RealField(grid), RealField(grid)});
    for (int n = 0; n <= n_t; ++n) traj.times[static_cast<size_t>(n)] = T * n / n_t;
    traj.times.back() = T;
    return traj;
}

NondimensionalData nondimensionalize(const RealField& S0, const RealField& I0,
                                     const KmParams& params) {
    params.validate();
    if (!params.beta || !params.d_s || !params.d_i)
        throw std::invalid_argument("nondimensionalize: beta, d_s, d_i are required");
    if (!(S0.grid == I0.grid))
        throw std::invalid_argument("nondimensionalize: fields live on different grids");
    NondimensionalData nd;
    nd.phi = S0;
    nd.psi = I0;
    nd.mu_eff = params.mu * *params.beta;
    nd.space_scale_s = std::sqrt(*params.d_s / *params.beta);
    nd.space_scale_i = std::sqrt(*params.d_i / *params.beta);
    nd.time_scale = 1.0 / *params.beta;
    return nd;
}

DimensionalData dimensionalize(const NondimensionalData& nd, const KmParams& params) {
    params.validate();
    if (!params.beta) throw std::invalid_argument("dimensionalize: beta is required");
    DimensionalData d;
    d.S0 = nd.phi;
    d.I0 = nd.psi;
    d.mu = nd.mu_eff / *params.beta;
    return d;
}

Trajectory duhamel_apply(const Trajectory& traj, const RealField& phi, const RealField& psi) {
    traj.validate();
    const GridSpec& grid = traj.states.front().u.grid;
    if (!(phi.grid == grid) || !(psi.grid == grid))
        throw std::invalid_argument("duhamel_apply: data grid does not match trajectory grid");

    const int n_slices = static_cast<int>(traj.times.size());
    const int n = grid.n_points;
    const double dt = traj.dt();
    const double sigma = mu_term_sign(traj.params.mu_sign);
    const double mu = traj.params.mu;

    // Spectral integrands per slice: fu = -dealias(uv)^hat, fv = -fu + sigma*mu*v^hat.
    std::vector<SpectralField> fu(static_cast<size_t>(n_slices));
    std::vector<SpectralField> fv(static_cast<size_t>(n_slices));
    for (int m = 0; m < n_slices; ++m) {
        const KmState& st = traj.states[static_cast<size_t>(m)];
        SpectralField p = dealias_two_thirds(forward_transform(pointwise_product(st.u, st.v)));
        SpectralField vhat = forward_transform(st.v);
        SpectralField a(grid), b(grid);
        for (size_t i = 0; i < a.coef.size(); ++i) {
            a.coef[i] = -p.coef[i];
            b.coef[i] = p.coef[i] + sigma * mu * vhat.coef[i];
        }
        fu[static_cast<size_t>(m)] = std::move(a);
        fv[static_cast<size_t>(m)] = std::move(b);
    }

    // Decay multipliers e^{-j*dt*xi^2} for lags j = 0..n_slices-1.
    std::vector<std::vector<double>> decay(static_cast<size_t>(n_slices),
                                           std::vector<double>(static_cast<size_t>(n)));
    for (int k = -n / 2; k < n / 2; ++k) {
        const double xi = grid.xi(k);
        const double step = std::exp(-dt * xi * xi);
        double acc = 1.0;
        for (int j = 0; j < n_slices; ++j) {
            decay[static_cast<size_t>(j)][static_cast<size_t>(k + n / 2)] = acc;
            acc *= step;
        }
    }

    const SpectralField phat = forward_transform(phi);
    const SpectralField qhat = forward_transform(psi);

    Trajectory out;
    out.times = traj.times;
    out.params = traj.params;
    out.idx = traj.idx;
    out.states.reserve(static_cast<size_t>(n_slices));
    for (int nn = 0; nn < n_slices; ++nn) {
        SpectralField uhat(grid), vhat(grid);
        const auto& d_n = decay[static_cast<size_t>(nn)];
        for (size_t i = 0; i < uhat.coef.size(); ++i) {
            uhat.coef[i] = d_n[i] * phat.coef[i];
            vhat.coef[i] = d_n[i] * qhat.coef[i];
        }
        // Composite trapezoid over t' in {t_0, ..., t_n}.
        for (int m = 0; m <= nn && nn > 0; ++m) {
            const double w = (m == 0 || m == nn) ? 0.5 * dt : dt;
            const auto& d = decay[static_cast<size_t>(nn - m)];
            const auto& au = fu[static_cast<size_t>(m)].coef;
            const auto& av = fv[static_cast<size_t>(m)].coef;
            for (size_t i = 0; i < uhat.coef.size(); ++i) {
                uhat.coef[i] += w * d[i] * au[i];
                vhat.coef[i] += w * d[i] * av[i];
            }
        }
        out.states.push_back(KmState{inverse_transform(uhat), inverse_transform(vhat)});
    }
    // The t = 0 slice is (phi, psi) exactly.
    out.states.front() = KmState{phi, psi};
    return out;
}

std::vector<double> mass_balance_residual(const Trajectory& traj) {
    traj.validate();
    if (traj.times.size() < 3)
        throw std::invalid_argument("mass_balance_residual: need at least 3 slices");
    const double dx = traj.states.front().u.grid.dx();
    const double dt = traj.dt();
    const double sigma = mu_term_sign(traj.params.mu_sign);
    const double mu = traj.params.mu;

    std::vector<double> mass(traj.times.size()), vmass(traj.times.size());
    for (size_t i = 0; i < traj.states.size(); ++i) {
        double m = 0.0, mv = 0.0;
        for (size_t j = 0; j < traj.states[i].u.samples.size(); ++j) {
            m += traj.states[i].u.samples[j] + traj.states[i].v.samples[j];
            mv += traj.states[i].v.samples[j];
        }
        mass[i] = m * dx;
        vmass[i] = mv * dx;
    }

    std::vector<double> res;
    res.reserve(traj.times.size() - 2);
    for (size_t i = 1; i + 1 < traj.times.size(); ++i)
        res.push_back((mass[i + 1] - mass[i - 1]) / (2.0 * dt) - sigma * mu * vmass[i]);
    return res;
}

}  // namespace kmlab
