// End-to-end acceptance checks.  Each case prints one PASS/FAIL line so the
// suite doubles as a human-readable scorecard.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kmlab/estimates.hpp"
#include "kmlab/oracles.hpp"
#include "kmlab/picard.hpp"
#include "kmlab/runio.hpp"
#include "kmlab/spectral.hpp"

using namespace kmlab;

namespace {

void verdict(int n, const char* name, bool ok) {
    std::printf("[criterion %02d] %-28s %s\n", n, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK(ok);
}

double max_abs_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.samples.size(); ++j)
        m = std::max(m, std::abs(a.samples[j] - b.samples[j]));
    return m;
}

double field_l2(const RealField& f) { return lp_norm(f, 2.0); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("criterion 1: spectral exactness") {
    const GridSpec g(1024, 32.0 * M_PI);
    bool ok = true;

    for (int k : {1, 17, 200, 341}) {
        RealField f(g);
        for (int j = 0; j < g.n_points; ++j)
            f.samples[static_cast<size_t>(j)] = std::cos(g.xi(k) * g.x(j));

        const double t = 0.13;
        const RealField heated = inverse_transform(heat_semigroup(forward_transform(f), t));
        const RealField heat_exact = scale(f, std::exp(-t * g.xi(k) * g.xi(k)));
        ok = ok && max_abs_diff(heated, heat_exact) <= 1e-12;

        for (double r : {-0.5, 0.5, 1.0, 2.0}) {
            const RealField derived = inverse_transform(riesz_derivative(forward_transform(f), r));
            const RealField riesz_exact = scale(f, std::pow(g.xi(k), r));
            const double rel =
                max_abs_diff(derived, riesz_exact) / std::max(1.0, std::pow(g.xi(k), r));
            ok = ok && rel <= 1e-12;
        }
    }

    const RealField noise = random_band_limited_field(5, 300, 2.0, g);
    ok = ok && max_abs_diff(noise, inverse_transform(forward_transform(noise))) <= 1e-12;

    verdict(1, "spectral exactness", ok);
}

TEST_CASE("criterion 2: heat kernel Lp-Lq suite") {
    const GridSpec g = lab_grid();
    const std::vector<double> times = {0.01, 0.1, 1.0};
    bool ok = true;
    for (const auto& [q, p] :
         std::vector<std::pair<double, double>>{{2, 2}, {2, 4}, {1, kPInf}}) {
        const EstimateReport r = verify_heat_lp_lq(1, 100, q, p, times, g);
        ok = ok && r.pass && r.max_ratio <= 1.0 + 1e-6;
    }
    verdict(2, "heat Lp-Lq bounds", ok);
}

TEST_CASE("criterion 3: fractional smoothing suite") {
    const GridSpec g = lab_grid();
    const std::vector<double> times = {0.01, 0.1, 1.0};
    const EstimateReport r = verify_riesz_smoothing(1, 100, {0.0, 0.5, 1.0, 1.5}, times, g);
    bool ok = r.pass && r.max_ratio <= 1.0 + 1e-9;

    // The single-mode extremizer at xi^2 = s/(2t) attains >= 0.99 of the
    // sharp constant.
    for (double s : {0.5, 1.0, 1.5}) {
        const double t = 0.01;
        const int k = static_cast<int>(std::lround(std::sqrt(s / (2.0 * t)) * g.half_length / M_PI));
        RealField f(g);
        for (int j = 0; j < g.n_points; ++j)
            f.samples[static_cast<size_t>(j)] = std::cos(g.xi(k) * g.x(j));
        const SpectralField out = riesz_derivative(heat_semigroup(forward_transform(f), t), s);
        double num = 0.0;
        for (const auto& c : out.coef) num += std::norm(c);
        const double attained = std::sqrt(2.0 * g.half_length * num) /
                                (std::pow(t, -s / 2.0) * field_l2(f));
        ok = ok && attained >= 0.99 * sharp_smoothing_constant(s);
    }
    verdict(3, "fractional smoothing", ok);
}

TEST_CASE("criterion 4: singular Beta-integral suite") {
    const std::vector<double> exponents = {0.5, 0.575, 0.65, 0.75, 0.875};
    std::vector<BetaLemmaCase> cases;
    for (double a : exponents)
        for (double b : exponents)
            for (double t : {0.1, 1.0, 10.0}) cases.emplace_back(a, b, t);
    const EstimateReport r = verify_beta_lemma(cases);
    const bool pi_case = std::abs(beta_case_ratio(BetaLemmaCase(0.5, 0.5, 1.0)) - M_PI) <= 1e-8;
    verdict(4, "Beta-integral quadrature", r.pass && pi_case);
}

TEST_CASE("criterion 5: linear and bilinear constants are stable") {
    const GridSpec fine(1024, 32.0 * M_PI);
    const GridSpec coarse(512, 32.0 * M_PI);
    const double T = 0.1;
    bool ok = true;

    for (double s : {0.0, 1.0, 1.9}) {
        const SobolevIndex idx(s);
        const auto stable = [&](auto&& measure) {
            const double base = measure(100, fine);
            const double nt_doubled = measure(200, fine);
            const double grid_halved = measure(100, coarse);
            const bool finite = std::isfinite(base) && base > 0.0;
            const bool nt_ok = std::abs(nt_doubled - base) / base < 0.02;
            const bool grid_ok = std::abs(grid_halved - base) / base < 0.05;
            return finite && nt_ok && grid_ok;
        };
        ok = ok && stable([&](int n_t, const GridSpec& g) {
                 return verify_linear_estimate(1, 100, idx, T, n_t, g).max_ratio;
             });
        ok = ok && stable([&](int n_t, const GridSpec& g) {
                 return verify_bilinear(1, 100, idx, T, n_t, g).max_ratio;
             });
    }
    verdict(5, "estimate constant stability", ok);
}

TEST_CASE("criterion 6: spatially constant data reduces to the SIR ODE") {
    const GridSpec g(256, 32.0 * M_PI);
    RealField phi(g), psi(g);
    for (auto& v : phi.samples) v = 0.02;
    for (auto& v : psi.samples) v = 0.01;
    KmParams params;
    params.mu = 0.5;
    params.mu_sign = MuSign::epidemiological;
    const double T = 0.2;
    const int n_t = 200;

    const PicardResult r = picard_solve(phi, psi, params, SobolevIndex(1.0), T, n_t, 1e-10, 50);
    const OdeTrajectory ode = rk4_sir(0.02, 0.01, 0.5, MuSign::epidemiological, T, 1e-4);
    const size_t stride = (ode.times.size() - 1) / static_cast<size_t>(n_t);

    bool ok = r.diagnostics.converged;
    for (int m = 0; m <= n_t; ++m) {
        const KmState& st = r.trajectory.states[static_cast<size_t>(m)];
        const auto& ref = ode.uv[static_cast<size_t>(m) * stride];
        double spatial_u = 0.0, spatial_v = 0.0, dev = 0.0;
        for (int j = 0; j < g.n_points; ++j) {
            spatial_u = std::max(spatial_u,
                                 std::abs(st.u.samples[static_cast<size_t>(j)] - st.u.samples[0]));
            spatial_v = std::max(spatial_v,
                                 std::abs(st.v.samples[static_cast<size_t>(j)] - st.v.samples[0]));
            dev = std::max({dev, std::abs(st.u.samples[static_cast<size_t>(j)] - ref[0]),
                            std::abs(st.v.samples[static_cast<size_t>(j)] - ref[1])});
        }
        ok = ok && spatial_u <= 1e-10 && spatial_v <= 1e-10 && dev <= 1e-6;
    }
    verdict(6, "SIR reduction vs RK4", ok);
}

TEST_CASE("criterion 7: Picard and splitting agree on admitted data") {
    const GridSpec g(512, 32.0 * M_PI);
    const SobolevIndex idx(1.0);
    const double T = 0.05;
    KmParams params;
    params.mu = 0.5;

    const double c_ell = verify_linear_estimate(1, 20, idx, T, 100, g).max_ratio;
    const double c_b = verify_bilinear(1, 20, idx, T, 100, g).max_ratio;
    const WellPosednessGate gate(c_ell, c_b, params.mu);

    const double amp = 0.2 * gate.data_threshold();
    const RealField phi = random_band_limited_field(11, 16, amp, g);
    const RealField psi = random_band_limited_field(12, 16, amp, g);
    bool ok = smallness_check(phi, psi, idx, gate, T).admitted;

    const int n_t = 100;
    const PicardResult picard = picard_solve(phi, psi, params, idx, T, n_t, 1e-12, 50, gate);
    const Trajectory split = splitting_solve(phi, psi, params, T, T / 2000);
    const size_t stride = 2000 / static_cast<size_t>(n_t);

    double max_diff = 0.0;
    for (int m = 0; m <= n_t; ++m) {
        const KmState& a = picard.trajectory.states[static_cast<size_t>(m)];
        const KmState& b = split.states[static_cast<size_t>(m) * stride];
        max_diff = std::max({max_diff, field_l2(sub(a.u, b.u)), field_l2(sub(a.v, b.v))});
    }
    ok = ok && picard.diagnostics.converged && max_diff <= 1e-5;
    verdict(7, "cross-solver agreement", ok);
}

TEST_CASE("criterion 8: zero infected data is the heat equation") {
    const GridSpec g(512, 32.0 * M_PI);
    const RealField phi = gaussian_bump(0.0, 2.0, 0.5, g);
    const RealField psi(g);
    KmParams params;
    params.mu = 0.7;
    const PicardResult r = picard_solve(phi, psi, params, SobolevIndex(1.0), 0.1, 100, 1e-12, 50);

    bool ok = r.diagnostics.converged;
    for (size_t m = 0; m < r.trajectory.times.size(); ++m) {
        const RealField expected =
            inverse_transform(heat_semigroup(forward_transform(phi), r.trajectory.times[m]));
        ok = ok && max_abs_diff(r.trajectory.states[m].v, RealField(g)) <= 1e-12;
        ok = ok && max_abs_diff(r.trajectory.states[m].u, expected) <= 1e-10;
    }
    verdict(8, "heat reduction", ok);
}

TEST_CASE("criterion 9: contraction factor and Picard rate") {
    const GridSpec g(512, 32.0 * M_PI);
    const SobolevIndex idx(1.0);
    KmParams params;
    params.mu = 1.0;
    const double T = 1.0 / 12.0;
    const int n_t = 100;

    const double c_ell = verify_linear_estimate(1, 50, idx, T, n_t, g).max_ratio;
    const double c_b = verify_bilinear(1, 50, idx, T, n_t, g).max_ratio;
    const WellPosednessGate gate(c_ell, c_b, params.mu);

    const double amp = 0.2 * gate.data_threshold();
    const RealField phi = random_band_limited_field(21, 16, amp, g);
    const RealField psi = random_band_limited_field(22, 16, amp, g);

    const ContractionProbe probe =
        contraction_probe(phi, psi, params, idx, T, n_t, gate, 1, 50);
    bool ok = std::abs(probe.theoretical_factor - 5.0 / 6.0) < 1e-12;
    ok = ok && probe.max_ratio <= 0.9;
    for (double r : probe.ratios) ok = ok && r < 1.0;

    const PicardResult solve = picard_solve(phi, psi, params, idx, T, n_t, 1e-10, 50, gate);
    ok = ok && solve.diagnostics.converged;
    const auto& diffs = solve.diagnostics.successive_diffs;
    for (size_t i = 2; i < diffs.size(); ++i) ok = ok && diffs[i] < diffs[i - 1];
    const double rate = solve.diagnostics.rate_estimate;
    ok = ok && rate <= 2.0 * probe.max_ratio && rate >= 0.5 * probe.max_ratio;

    std::printf("  contraction: max ratio %.4f, theoretical %.4f, picard rate %.4f\n",
                probe.max_ratio, probe.theoretical_factor, rate);
    verdict(9, "contraction and rate", ok);
}

TEST_CASE("criterion 10: Lipschitz dependence on data") {
    KmParams params;
    params.mu = 0.5;
    bool ok = true;
    for (double s : {0.0, 1.0}) {
        const SobolevIndex idx(s);
        const GridSpec g(256, 32.0 * M_PI);
        const double c_ell = verify_linear_estimate(1, 30, idx, 0.1, 100, g).max_ratio;
        const double c_b = verify_bilinear(1, 30, idx, 0.1, 100, g).max_ratio;
        const WellPosednessGate gate(c_ell, c_b, params.mu);
        const LipschitzProbe probe = lipschitz_probe(params, idx, 0.1, 100, gate, 2, 20);
        ok = ok && probe.contraction_factor < 1.0;
        for (double r : probe.ratios) ok = ok && r <= probe.bound;
        std::printf("  lipschitz s=%.1f: max ratio %.4f vs bound %.4f\n", s, probe.max_ratio,
                    probe.bound);
    }
    verdict(10, "Lipschitz data dependence", ok);
}

TEST_CASE("criterion 11: mass balance residual") {
    // The residual is a central-difference truncation error whose constant
    // scales with the domain length, so the absolute threshold is checked on
    // a compact torus; the convergence order is domain independent.
    const GridSpec g(256, 16.0 * M_PI);
    KmParams params;
    params.mu = 0.5;
    params.mu_sign = MuSign::epidemiological;
    const double T = 0.2;

    const auto residual_max = [&](const RealField& phi, const RealField& psi, int n_t) {
        const PicardResult r = picard_solve(phi, psi, params, SobolevIndex(1.0), T, n_t, 1e-12, 50);
        double worst = 0.0;
        for (double v : mass_balance_residual(r.trajectory)) worst = std::max(worst, std::abs(v));
        return worst;
    };

    // Criterion-6 scenario.
    RealField phi(g), psi(g);
    for (auto& v : phi.samples) v = 0.02;
    for (auto& v : psi.samples) v = 0.01;
    const double r200 = residual_max(phi, psi, 200);
    const double r400 = residual_max(phi, psi, 400);
    bool ok = r400 <= 1e-8;
    ok = ok && (r200 / r400 > 2.5) && (r200 / r400 < 6.0);

    // Generic spatially varying run.
    const RealField bphi = gaussian_bump(0.0, 2.0, 0.02, g);
    const RealField bpsi = gaussian_bump(3.0, 1.5, 0.01, g);
    const double g200 = residual_max(bphi, bpsi, 200);
    const double g400 = residual_max(bphi, bpsi, 400);
    ok = ok && (g200 / g400 > 2.5) && (g200 / g400 < 6.0);

    std::printf("  mass residual: constant %0.3e -> %0.3e, generic %0.3e -> %0.3e\n", r200, r400,
                g200, g400);
    verdict(11, "mass balance", ok);
}

TEST_CASE("criterion 12: byte-identical reruns") {
    const std::filesystem::path base =
        std::filesystem::temp_directory_path() / "kmlab_acceptance_determinism";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);

    const std::string cli = KMLAB_CLI_PATH;
    const std::string common_solve =
        " --set grid.n_points=256 --set solver.n_t=50 --set model.mu=0.5"
        " --set 'data.u=gaussian_bump(0, 1, 0.01)' --set 'data.v=band_limited(3, 8, 0.005)'";
    const std::string common_verify =
        " --set experiment.checks=beta,heat_lp_lq --set experiment.n_samples=20";

    bool ok = true;
    for (const auto& [sub, flags] : std::vector<std::pair<std::string, std::string>>{
             {"solve", common_solve}, {"verify", common_verify}}) {
        std::string contents[2];
        for (int i = 0; i < 2; ++i) {
            const std::filesystem::path dir = base / (sub + std::to_string(i));
            const std::string cmd =
                cli + " " + sub + " --out '" + dir.string() + "'" + flags + " > /dev/null";
            ok = ok && std::system(cmd.c_str()) == 0;
            std::ostringstream all;
            std::vector<std::filesystem::path> files;
            for (const auto& e : std::filesystem::directory_iterator(dir))
                files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) all << f.filename().string() << '\n' << slurp(f);
            contents[i] = all.str();
        }
        ok = ok && !contents[0].empty() && contents[0] == contents[1];
    }
    std::filesystem::remove_all(base);
    verdict(12, "byte-stable outputs", ok);
}
