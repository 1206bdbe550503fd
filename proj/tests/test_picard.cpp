#include <cmath>
#include <doctest.h>

#include "kmlab/picard.hpp"
#include "kmlab/spectral.hpp"

using namespace kmlab;

namespace {

const GridSpec g(256, 32.0 * M_PI);

double max_abs_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.samples.size(); ++j)
        m = std::max(m, std::abs(a.samples[j] - b.samples[j]));
    return m;
}

}  // namespace

TEST_CASE("gate arithmetic") {
    const WellPosednessGate gate(2.0, 0.25, 0.5);
    CHECK(gate.rho() == doctest::Approx(1.0 / 0.75).epsilon(1e-15));
    CHECK(gate.data_threshold() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(gate.horizon_bound() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const WellPosednessGate no_recovery(2.0, 0.25, 0.0);
    CHECK(std::isinf(no_recovery.horizon_bound()));

    CHECK_THROWS_AS(WellPosednessGate(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(WellPosednessGate(1.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("smallness check gates on data size and horizon") {
    const WellPosednessGate gate(2.0, 0.25, 0.5);
    const SobolevIndex idx(1.0);
    const double threshold = gate.data_threshold();

    const RealField small = random_band_limited_field(1, 10, 0.1 * threshold, g);
    const RealField zero(g);
    SmallnessDecision d = smallness_check(small, zero, idx, gate, 0.1);
    CHECK(d.admitted);
    CHECK(d.data_threshold == doctest::Approx(threshold));

    const RealField large = random_band_limited_field(1, 10, 10.0 * threshold, g);
    CHECK_FALSE(smallness_check(large, zero, idx, gate, 0.1).admitted);

    // Horizon at or past 1/(6 mu) is rejected.
    CHECK_FALSE(smallness_check(small, zero, idx, gate, gate.horizon_bound()).admitted);
    CHECK(smallness_check(small, zero, idx, gate, 0.99 * gate.horizon_bound()).admitted);
}

TEST_CASE("zero data converges to the zero solution immediately") {
    const RealField zero(g);
    const PicardResult r =
        picard_solve(zero, zero, KmParams{}, SobolevIndex(1.0), 0.1, 20, 1e-12, 50);
    CHECK(r.diagnostics.converged);
    CHECK(r.diagnostics.iterations <= 2);
    for (const auto& st : r.trajectory.states) {
        CHECK(max_abs_diff(st.u, zero) == 0.0);
        CHECK(max_abs_diff(st.v, zero) == 0.0);
    }
}

TEST_CASE("zero infected data reduces the solver to the heat equation") {
    const RealField phi = gaussian_bump(0.0, 2.0, 0.5, g);
    const RealField psi(g);
    KmParams params;
    params.mu = 0.7;
    const PicardResult r = picard_solve(phi, psi, params, SobolevIndex(1.0), 0.1, 50, 1e-12, 50);
    REQUIRE(r.diagnostics.converged);
    for (size_t m = 0; m < r.trajectory.times.size(); ++m) {
        const RealField expected =
            inverse_transform(heat_semigroup(forward_transform(phi), r.trajectory.times[m]));
        CHECK(max_abs_diff(r.trajectory.states[m].v, RealField(g)) < 1e-12);
        CHECK(max_abs_diff(r.trajectory.states[m].u, expected) < 1e-10);
    }
}

TEST_CASE("the converged iterate is a fixed point of the Duhamel map") {
    const RealField phi = random_band_limited_field(3, 12, 0.02, g);
    const RealField psi = random_band_limited_field(4, 12, 0.01, g);
    KmParams params;
    params.mu = 0.5;
    const SobolevIndex idx(1.0);
    const PicardResult r = picard_solve(phi, psi, params, idx, 0.1, 50, 1e-12, 50);
    REQUIRE(r.diagnostics.converged);

    const Trajectory mapped = duhamel_apply(r.trajectory, phi, psi);
    FieldTrajectory du, dv;
    du.times = dv.times = mapped.times;
    for (size_t m = 0; m < mapped.states.size(); ++m) {
        du.slices.push_back(sub(mapped.states[m].u, r.trajectory.states[m].u));
        dv.slices.push_back(sub(mapped.states[m].v, r.trajectory.states[m].v));
    }
    CHECK(pair_norm(xs_norm(du, idx), xs_norm(dv, idx)) < 1e-10);
}

TEST_CASE("successive differences decay geometrically") {
    const RealField phi = random_band_limited_field(7, 12, 0.05, g);
    const RealField psi = random_band_limited_field(8, 12, 0.05, g);
    KmParams params;
    params.mu = 1.0;
    const PicardResult r =
        picard_solve(phi, psi, params, SobolevIndex(1.0), 1.0 / 12.0, 50, 1e-12, 50);
    REQUIRE(r.diagnostics.converged);
    REQUIRE(r.diagnostics.successive_diffs.size() >= 3);
    for (size_t i = 1; i + 1 < r.diagnostics.successive_diffs.size(); ++i)
        CHECK(r.diagnostics.successive_diffs[i + 1] < r.diagnostics.successive_diffs[i]);
    CHECK(r.diagnostics.rate_estimate < 1.0);
    CHECK(r.diagnostics.rate_estimate > 0.0);
}

TEST_CASE("divergent data raises a solver error carrying diagnostics") {
    RealField phi(g), psi(g);
    for (auto& v : phi.samples) v = -30.0;
    for (auto& v : psi.samples) v = 30.0;
    try {
        (void)picard_solve(phi, psi, KmParams{}, SobolevIndex(0.0), 1.0, 50, 1e-10, 50,
                           WellPosednessGate(2.0, 0.01, 0.0));
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.diagnostics.iterations > 0);
        CHECK_FALSE(e.diagnostics.converged);
        CHECK_FALSE(e.diagnostics.successive_diffs.empty());
    }
}

TEST_CASE("contraction probe is deterministic and respects admittance") {
    const WellPosednessGate gate(2.3, 0.01, 1.0);
    KmParams params;
    params.mu = 1.0;
    const SobolevIndex idx(1.0);
    const double T = 1.0 / 12.0;
    const RealField phi = random_band_limited_field(5, 10, 0.1 * gate.data_threshold(), g);
    const RealField psi(g);

    const ContractionProbe a = contraction_probe(phi, psi, params, idx, T, 40, gate, 17, 5);
    const ContractionProbe b = contraction_probe(phi, psi, params, idx, T, 40, gate, 17, 5);
    REQUIRE(a.ratios.size() == 5);
    for (size_t i = 0; i < a.ratios.size(); ++i) CHECK(a.ratios[i] == b.ratios[i]);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.theoretical_factor ==
          doctest::Approx(2.0 * gate.rho() * gate.c_b_hat + 2.0 * params.mu * T).epsilon(1e-15));

    // Horizon at the bound: rejected with the threshold in the message.
    CHECK_THROWS_AS((void)contraction_probe(phi, psi, params, idx, gate.horizon_bound(), 40, gate,
                                            17, 5),
                    SolverError);
}

TEST_CASE("Lipschitz probe stays under its theoretical bound") {
    const WellPosednessGate gate(2.3, 0.01, 0.5);
    KmParams params;
    params.mu = 0.5;
    const LipschitzProbe probe =
        lipschitz_probe(params, SobolevIndex(1.0), 0.1, 40, gate, 23, 4);
    REQUIRE(probe.ratios.size() == 4);
    CHECK(probe.contraction_factor < 1.0);
    CHECK(probe.bound == doctest::Approx(gate.c_ell_hat / (1.0 - probe.contraction_factor)));
    for (double r : probe.ratios) CHECK(r <= probe.bound);
}
