#include "kmlab/picard.hpp"

#include <cmath>
#include <random>

#include "kmlab/spectral.hpp"

namespace kmlab {

namespace {

double xs_pair_norm(const Trajectory& traj) {
    return pair_norm(xs_norm(traj.component_u(), traj.idx), xs_norm(traj.component_v(), traj.idx));
}

Trajectory diff_trajectory(const Trajectory& a, const Trajectory& b) {
    Trajectory d = a;
    for (size_t i = 0; i < d.states.size(); ++i) {
        d.states[i].u = sub(a.states[i].u, b.states[i].u);
        d.states[i].v = sub(a.states[i].v, b.states[i].v);
    }
    return d;
}

double geometric_rate(const std::vector<double>& diffs) {
    double log_sum = 0.0;
    int count = 0;
    for (size_t k = 1; k < diffs.size(); ++k) {
        if (diffs[k - 1] > 0.0 && diffs[k] > 0.0) {
            log_sum += std::log(diffs[k] / diffs[k - 1]);
            ++count;
        }
    }
    return count > 0 ? std::exp(log_sum / count) : 0.0;
}

}  // namespace

SmallnessDecision smallness_check(const RealField& phi, const RealField& psi,
                                  const SobolevIndex& idx, const WellPosednessGate& gate,
                                  double horizon) {
    SmallnessDecision d;
    d.data_norm = sobolev_norm(phi, idx) + sobolev_norm(psi, idx);
    d.data_threshold = gate.data_threshold();
    d.horizon = horizon;
    d.horizon_bound = gate.horizon_bound();
    d.admitted = (d.data_norm <= d.data_threshold) && (horizon < d.horizon_bound);
    return d;
}

PicardResult picard_solve(const RealField& phi, const RealField& psi, const KmParams& params,
                          const SobolevIndex& idx, double T, int n_t, double tol, int max_iter,
                          const std::optional<WellPosednessGate>& gate) {
    phi.validate();
    psi.validate();
    params.validate();
    if (!(T > 0.0) || n_t < 2 || !(tol > 0.0) || max_iter < 1)
        throw std::invalid_argument("picard_solve: invalid solver parameters");
    if (!(phi.grid == psi.grid))
        throw std::invalid_argument("picard_solve: fields live on different grids");

    const double tol_eff = gate ? tol * gate->rho() : tol;
    Trajectory current = zero_trajectory(phi.grid, params, idx, T, n_t);

    PicardDiagnostics diag;
    for (int iter = 1; iter <= max_iter; ++iter) {
        Trajectory next = duhamel_apply(current, phi, psi);
        const double diff = xs_pair_norm(diff_trajectory(next, current));
        diag.iterations = iter;
        diag.successive_diffs.push_back(diff);
        current = std::move(next);
        if (gate && xs_pair_norm(current) > 10.0 * gate->rho()) {
            diag.rate_estimate = geometric_rate(diag.successive_diffs);
            throw SolverError("picard_solve: iterate norm exceeded 10*rho (divergence)", diag);
        }
        if (diff < tol_eff) {
            diag.converged = true;
            diag.rate_estimate = geometric_rate(diag.successive_diffs);
            return PicardResult{std::move(current), std::move(diag)};
        }
    }
    diag.rate_estimate = geometric_rate(diag.successive_diffs);
    throw SolverError("picard_solve: max_iter reached without convergence", diag);
}

namespace {

// Trajectory built from band-limited fields with slowly decaying time
// profiles; the profile scale delta is tied to T (not to n_t) so refining the
// time grid samples the same continuum object.
Trajectory random_ball_trajectory(std::uint64_t seed, const GridSpec& grid, const KmParams& params,
                                  const SobolevIndex& idx, double T, int n_t, double radius) {
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };

    const RealField fu = random_band_limited_field(split_seed(seed, 1), 16, 1.0, grid);
    const RealField fv = random_band_limited_field(split_seed(seed, 2), 16, 1.0, grid);
    const double gamma_u = 2.0 * idx.alpha * uniform();
    const double gamma_v = 2.0 * idx.alpha * uniform();
    const double fraction = 0.25 + 0.5 * uniform();
    const double delta = T / 8.0;

    Trajectory traj = zero_trajectory(grid, params, idx, T, n_t);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        traj.states[i].u = scale(fu, std::pow(1.0 + t / delta, -gamma_u));
        traj.states[i].v = scale(fv, std::pow(1.0 + t / delta, -gamma_v));
    }
    const double norm = xs_pair_norm(traj);
    const double factor = fraction * radius / norm;
    for (auto& st : traj.states) {
        st.u = scale(st.u, factor);
        st.v = scale(st.v, factor);
    }
    return traj;
}

}  // namespace

ContractionProbe contraction_probe(const RealField& phi, const RealField& psi,
                                   const KmParams& params, const SobolevIndex& idx, double T,
                                   int n_t, const WellPosednessGate& gate, std::uint64_t seed,
                                   int n_pairs) {
    const SmallnessDecision gate_decision = smallness_check(phi, psi, idx, gate, T);
    if (!gate_decision.admitted)
        throw SolverError("contraction_probe: data rejected by smallness gate (norm " +
                          std::to_string(gate_decision.data_norm) + " vs threshold " +
                          std::to_string(gate_decision.data_threshold) + ", horizon " +
                          std::to_string(gate_decision.horizon) + " vs bound " +
                          std::to_string(gate_decision.horizon_bound) + ")");

    const double rho = gate.rho();
    ContractionProbe probe;
    probe.theoretical_factor = 2.0 * rho * gate.c_b_hat + 2.0 * params.mu * T;

    std::uint64_t draw = 0;
    for (int i = 0; i < n_pairs; ++i) {
        double ratio = -1.0;
        // Degenerate pairs are skipped and resampled.
        while (ratio < 0.0) {
            const Trajectory w1 =
                random_ball_trajectory(split_seed(seed, draw++), phi.grid, params, idx, T, n_t, rho);
            const Trajectory w2 =
                random_ball_trajectory(split_seed(seed, draw++), phi.grid, params, idx, T, n_t, rho);
            const double denom = xs_pair_norm(diff_trajectory(w1, w2));
            if (denom <= 1e-14 * rho) continue;
            const Trajectory t1 = duhamel_apply(w1, phi, psi);
            const Trajectory t2 = duhamel_apply(w2, phi, psi);
            ratio = xs_pair_norm(diff_trajectory(t1, t2)) / denom;
        }
        probe.ratios.push_back(ratio);
        probe.max_ratio = std::max(probe.max_ratio, ratio);
    }
    return probe;
}

LipschitzProbe lipschitz_probe(const KmParams& params, const SobolevIndex& idx, double T, int n_t,
                               const WellPosednessGate& gate, std::uint64_t seed, int n_pairs) {
    // Representative ball-center data for the contraction factor measurement.
    const GridSpec grid(256, 32.0 * M_PI);
    const double threshold = gate.data_threshold();
    const auto make_data = [&](std::uint64_t s, double fraction) {
        RealField f = random_band_limited_field(s, 16, 1.0, grid);
        const double norm = sobolev_norm(f, idx);
        return scale(f, fraction * 0.5 * threshold / norm);
    };

    const RealField phi0 = make_data(split_seed(seed, 1000001), 0.8);
    const RealField psi0 = make_data(split_seed(seed, 1000002), 0.8);
    const ContractionProbe contraction =
        contraction_probe(phi0, psi0, params, idx, T, n_t, gate, split_seed(seed, 1000003), 20);

    LipschitzProbe probe;
    probe.contraction_factor = contraction.max_ratio;
    if (probe.contraction_factor >= 1.0)
        throw SolverError("lipschitz_probe: measured contraction factor >= 1");
    probe.bound = gate.c_ell_hat / (1.0 - probe.contraction_factor);

    for (int i = 0; i < n_pairs; ++i) {
        std::mt19937_64 rng(split_seed(seed, static_cast<std::uint64_t>(i)));
        const auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
        const std::uint64_t base = split_seed(seed, 4 * static_cast<std::uint64_t>(i) + 17);
        const RealField phi1 = make_data(split_seed(base, 1), 0.3 + 0.6 * uniform());
        const RealField psi1 = make_data(split_seed(base, 2), 0.3 + 0.6 * uniform());
        const RealField phi2 = make_data(split_seed(base, 3), 0.3 + 0.6 * uniform());
        const RealField psi2 = make_data(split_seed(base, 4), 0.3 + 0.6 * uniform());

        const double data_diff =
            sobolev_norm(sub(phi1, phi2), idx) + sobolev_norm(sub(psi1, psi2), idx);
        if (data_diff <= 1e-14 * threshold) continue;  // identical pair, no ratio

        const PicardResult r1 = picard_solve(phi1, psi1, params, idx, T, n_t, 1e-10, 50, gate);
        const PicardResult r2 = picard_solve(phi2, psi2, params, idx, T, n_t, 1e-10, 50, gate);
        const double ratio =
            xs_pair_norm(diff_trajectory(r1.trajectory, r2.trajectory)) / data_diff;
        probe.ratios.push_back(ratio);
        probe.max_ratio = std::max(probe.max_ratio, ratio);
    }
    return probe;
}

}  // namespace kmlab
