#include "kmlab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kmlab/oracles.hpp"
#include "kmlab/spectral.hpp"

namespace kmlab {

GridSpec lab_grid() { return GridSpec(1024, 32.0 * M_PI); }

RealField lab_sample(std::uint64_t seed, std::uint64_t index, const GridSpec& grid) {
    std::mt19937_64 rng(split_seed(seed, index));
    const auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    if (index % 2 == 0) {
        static constexpr int cutoffs[] = {8, 16, 32, 64};
        const int cutoff = cutoffs[rng() % 4];
        return random_band_limited_field(split_seed(seed, index + 0x517cc1b7ULL), cutoff, 1.0, grid);
    }
    const double center = (uniform() - 0.5) * 0.5 * grid.half_length;
    const double width = 0.3 + 2.7 * uniform();
    const double height = 0.5 + 1.5 * uniform();
    return gaussian_bump(center, width, height, grid);
}

namespace {

double spectral_l2(const SpectralField& F) {
    double sum = 0.0;
    for (const auto& c : F.coef) sum += std::norm(c);
    return std::sqrt(2.0 * F.grid.half_length * sum);
}

double spectral_hs(const SpectralField& F, const SobolevIndex& idx) {
    double sum = 0.0;
    for (int k = F.min_wavenumber(); k <= F.max_wavenumber(); ++k) {
        const double w = (k == 0) ? (idx.s == 0.0 ? 1.0 : 0.0)
                                  : std::pow(std::abs(F.grid.xi(k)), 2.0 * idx.s);
        sum += w * std::norm(F.at(k));
    }
    return std::sqrt(2.0 * F.grid.half_length * sum);
}

}  // namespace

EstimateReport verify_heat_lp_lq(std::uint64_t seed, int n_samples, double q, double p,
                                 const std::vector<double>& times, const GridSpec& grid) {
    if (!(q >= 1.0 && q <= p)) throw std::invalid_argument("verify_heat_lp_lq: need 1 <= q <= p");
    const double inv_q = q == kPInf ? 0.0 : 1.0 / q;
    const double inv_p = p == kPInf ? 0.0 : 1.0 / p;
    const double exponent = -0.5 * (inv_q - inv_p);

    EstimateReport report;
    report.name = "heat_lp_lq";
    report.parameters = {{"q", q}, {"p", p}};
    report.n_samples = n_samples;
    report.seed = seed;
    report.bound_constant = 1.0;
    for (int i = 0; i < n_samples; ++i) {
        const RealField f = lab_sample(seed, static_cast<std::uint64_t>(i), grid);
        const double denom_norm = lp_norm(f, q);
        if (denom_norm == 0.0) continue;
        const SpectralField F = forward_transform(f);
        for (double t : times) {
            const RealField sf = inverse_transform(heat_semigroup(F, t));
            const double bound = std::pow(4.0 * M_PI * t, exponent);
            report.max_ratio = std::max(report.max_ratio, lp_norm(sf, p) / (bound * denom_norm));
        }
    }
    report.pass = report.max_ratio <= 1.0 + 1e-6;
    return report;
}

double sharp_smoothing_constant(double s) {
    return s == 0.0 ? 1.0 : std::pow(s / (2.0 * M_E), 0.5 * s);
}

double measure_smoothing_ratio(std::uint64_t seed, int n_samples, double s,
                               const std::vector<double>& times, const GridSpec& grid) {
    double max_ratio = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const SpectralField F =
            forward_transform(lab_sample(seed, static_cast<std::uint64_t>(i), grid));
        const double l2 = spectral_l2(F);
        if (l2 == 0.0) continue;
        for (double t : times) {
            const double num = spectral_l2(riesz_derivative(heat_semigroup(F, t), s));
            max_ratio = std::max(max_ratio, num * std::pow(t, 0.5 * s) / l2);
        }
    }
    return max_ratio;
}

EstimateReport verify_riesz_smoothing(std::uint64_t seed, int n_samples,
                                      const std::vector<double>& s_values,
                                      const std::vector<double>& times, const GridSpec& grid) {
    EstimateReport report;
    report.name = "riesz_smoothing";
    report.n_samples = n_samples;
    report.seed = seed;
    report.bound_constant = 1.0;  // ratios normalized by the sharp constant per s
    report.pass = true;
    for (size_t i = 0; i < s_values.size(); ++i) {
        const double s = s_values[i];
        const double raw = measure_smoothing_ratio(seed, n_samples, s, times, grid);
        const double sharp = sharp_smoothing_constant(s);
        report.parameters.emplace_back("s" + std::to_string(i), s);
        report.max_ratio = std::max(report.max_ratio, raw / sharp);
        if (!(raw <= sharp + 1e-9)) report.pass = false;
    }
    return report;
}

namespace {

double hls_max_ratio(std::uint64_t seed, int n_samples, double alpha, double p, double q,
                     const GridSpec& grid) {
    double max_ratio = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        SpectralField F = forward_transform(lab_sample(seed, static_cast<std::uint64_t>(i), grid));
        F.at(0) = 0.0;  // mean removed before, not restored
        const RealField mean_zero = inverse_transform(F);
        const double denom = lp_norm(mean_zero, p);
        if (denom == 0.0) continue;
        const RealField smoothed = inverse_transform(riesz_derivative(F, -alpha));
        max_ratio = std::max(max_ratio, lp_norm(smoothed, q) / denom);
    }
    return max_ratio;
}

}  // namespace

EstimateReport verify_hls(std::uint64_t seed, int n_samples, double alpha, double p, double q,
                          const GridSpec& grid) {
    if (std::abs(1.0 / q - (1.0 / p - alpha)) > 1e-12)
        throw std::invalid_argument("verify_hls: parameters must satisfy 1/q = 1/p - alpha");
    const double base = hls_max_ratio(seed, n_samples, alpha, p, q, grid);
    const double refined =
        hls_max_ratio(seed, n_samples, alpha, p, q, GridSpec(2 * grid.n_points, grid.half_length));

    EstimateReport report;
    report.name = "hls";
    report.parameters = {{"alpha", alpha}, {"p", p}, {"q", q}, {"refined_max_ratio", refined}};
    report.n_samples = n_samples;
    report.seed = seed;
    report.max_ratio = base;
    // No finite extremal constant on the discrete torus; the pass criterion
    // is refinement stability of the measured max.
    report.pass = std::isfinite(base) && std::abs(refined - base) <= 0.05 * base;
    return report;
}

namespace {

double linear_estimate_max(std::uint64_t seed, int n_samples, const SobolevIndex& idx, double T,
                           int n_t, const GridSpec& grid) {
    double max_ratio = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const RealField phi = lab_sample(seed, static_cast<std::uint64_t>(i), grid);
        const double data_norm = sobolev_norm(phi, idx);
        if (data_norm == 0.0) continue;  // 0/0 excluded
        const SpectralField F = forward_transform(phi);
        FieldTrajectory flow;
        flow.times.resize(static_cast<size_t>(n_t) + 1);
        flow.slices.reserve(static_cast<size_t>(n_t) + 1);
        for (int n = 0; n <= n_t; ++n) {
            flow.times[static_cast<size_t>(n)] = T * n / n_t;
            flow.slices.push_back(inverse_transform(heat_semigroup(F, flow.times[static_cast<size_t>(n)])));
        }
        max_ratio = std::max(max_ratio, xs_norm(flow, idx).total / data_norm);
    }
    return max_ratio;
}

}  // namespace

EstimateReport verify_linear_estimate(std::uint64_t seed, int n_samples, const SobolevIndex& idx,
                                      double T, int n_t, const GridSpec& grid) {
    const double base = linear_estimate_max(seed, n_samples, idx, T, n_t, grid);
    const double refined = linear_estimate_max(seed, n_samples, idx, T, 2 * n_t, grid);

    EstimateReport report;
    report.name = "linear_estimate";
    report.parameters = {{"s", idx.s}, {"T", T}, {"n_t", static_cast<double>(n_t)},
                         {"refined_max_ratio", refined}};
    report.n_samples = n_samples;
    report.seed = seed;
    report.max_ratio = base;  // empirical C_ell, a lower bound on the true constant
    report.pass = std::isfinite(base) && std::abs(refined - base) <= 0.02 * base;
    return report;
}

namespace {

// Band-limited space-time trajectory with slowly decaying time profiles,
// stressing the weighted part of the X^s norm.  Profile scales are tied to T
// so that time refinement samples the same continuum object, and cutoffs stay
// below n/3 at 512 points so dealiasing and quadrature are grid independent.
FieldTrajectory make_test_trajectory(std::uint64_t seed, const SobolevIndex& idx, double T, int n_t,
                                     const GridSpec& grid) {
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    static constexpr int cutoffs[] = {8, 24, 48};
    const RealField f1 = random_band_limited_field(split_seed(seed, 1), cutoffs[rng() % 3], 1.0, grid);
    const RealField f2 = random_band_limited_field(split_seed(seed, 2), cutoffs[rng() % 3], 1.0, grid);
    const double gamma1 = 2.0 * idx.alpha * uniform();
    const double gamma2 = 2.0 * idx.alpha * uniform();
    const double delta = T / 50.0;

    FieldTrajectory traj;
    traj.times.resize(static_cast<size_t>(n_t) + 1);
    traj.slices.reserve(static_cast<size_t>(n_t) + 1);
    for (int n = 0; n <= n_t; ++n) {
        const double t = T * n / n_t;
        traj.times[static_cast<size_t>(n)] = t;
        traj.slices.push_back(add(scale(f1, std::pow(1.0 + t / delta, -gamma1)),
                                  scale(f2, std::pow(1.0 + t / delta, -gamma2))));
    }
    return traj;
}

}  // namespace

std::vector<BilinearSample> bilinear_samples(std::uint64_t seed, int n_samples,
                                             const SobolevIndex& idx, double T, int n_t,
                                             const GridSpec& grid) {
    const int n = grid.n_points;
    const double dt = T / n_t;

    // Decay multipliers for lags j = 0..n_t.
    std::vector<std::vector<double>> decay(static_cast<size_t>(n_t) + 1,
                                           std::vector<double>(static_cast<size_t>(n)));
    for (int k = -n / 2; k < n / 2; ++k) {
        const double xi = M_PI * k / grid.half_length;
        const double step = std::exp(-dt * xi * xi);
        double acc = 1.0;
        for (int j = 0; j <= n_t; ++j) {
            decay[static_cast<size_t>(j)][static_cast<size_t>(k + n / 2)] = acc;
            acc *= step;
        }
    }

    std::vector<BilinearSample> samples;
    samples.reserve(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const FieldTrajectory f =
            make_test_trajectory(split_seed(seed, 2 * static_cast<std::uint64_t>(i)), idx, T, n_t, grid);
        const FieldTrajectory g = make_test_trajectory(
            split_seed(seed, 2 * static_cast<std::uint64_t>(i) + 1), idx, T, n_t, grid);

        std::vector<SpectralField> products;
        products.reserve(f.slices.size());
        for (size_t m = 0; m < f.slices.size(); ++m)
            products.push_back(dealias_two_thirds(
                forward_transform(pointwise_product(f.slices[m], g.slices[m]))));

        BilinearSample sample;
        sample.xs_f = xs_norm(f, idx).total;
        sample.xs_g = xs_norm(g, idx).total;
        for (int nn = 1; nn <= n_t; ++nn) {
            SpectralField b(grid);
            for (int m = 0; m <= nn; ++m) {
                const double w = (m == 0 || m == nn) ? 0.5 * dt : dt;
                const auto& d = decay[static_cast<size_t>(nn - m)];
                const auto& pm = products[static_cast<size_t>(m)].coef;
                for (size_t j = 0; j < b.coef.size(); ++j) b.coef[j] += w * d[j] * pm[j];
            }
            const double t = f.times[static_cast<size_t>(nn)];
            sample.num_sobolev = std::max(sample.num_sobolev, spectral_hs(b, idx));
            sample.num_weighted =
                std::max(sample.num_weighted,
                         std::pow(t, idx.alpha) * lp_norm(inverse_transform(b), 4.0));
            sample.denom_lem1 =
                std::max(sample.denom_lem1, std::pow(t, 2.0 * idx.alpha) *
                                                lp_norm(f.slices[static_cast<size_t>(nn)], 4.0) *
                                                lp_norm(g.slices[static_cast<size_t>(nn)], 4.0));
        }
        samples.push_back(sample);
    }
    return samples;
}

EstimateReport verify_bilinear(std::uint64_t seed, int n_samples, const SobolevIndex& idx, double T,
                               int n_t, const GridSpec& grid) {
    const auto ratio_from = [](const std::vector<BilinearSample>& samples) {
        double max_ratio = 0.0;
        for (const auto& s : samples) {
            if (s.xs_f == 0.0 || s.xs_g == 0.0) continue;
            max_ratio = std::max(max_ratio, (s.num_sobolev + s.num_weighted) / (s.xs_f * s.xs_g));
        }
        return max_ratio;
    };
    const double base = ratio_from(bilinear_samples(seed, n_samples, idx, T, n_t, grid));
    const double refined = ratio_from(bilinear_samples(seed, n_samples, idx, T, 2 * n_t, grid));

    EstimateReport report;
    report.name = "bilinear_estimate";
    report.parameters = {{"s", idx.s}, {"T", T}, {"n_t", static_cast<double>(n_t)},
                         {"refined_max_ratio", refined}};
    report.n_samples = n_samples;
    report.seed = seed;
    report.max_ratio = base;  // empirical C_b
    report.pass = std::isfinite(base) && std::abs(refined - base) <= 0.02 * base;
    return report;
}

Lem1Report verify_lem1_components(std::uint64_t seed, int n_samples, const SobolevIndex& idx,
                                  double T, int n_t, const GridSpec& grid) {
    const auto samples = bilinear_samples(seed, n_samples, idx, T, n_t, grid);
    Lem1Report out;
    for (EstimateReport* r : {&out.sobolev_part, &out.weighted_part}) {
        r->parameters = {{"s", idx.s}, {"T", T}, {"n_t", static_cast<double>(n_t)}};
        r->n_samples = n_samples;
        r->seed = seed;
    }
    out.sobolev_part.name = "lem1_sobolev_component";
    out.weighted_part.name = "lem1_weighted_component";
    for (const auto& s : samples) {
        if (s.denom_lem1 == 0.0) continue;
        out.sobolev_part.max_ratio = std::max(out.sobolev_part.max_ratio, s.num_sobolev / s.denom_lem1);
        out.weighted_part.max_ratio =
            std::max(out.weighted_part.max_ratio, s.num_weighted / s.denom_lem1);
    }
    out.sobolev_part.pass = std::isfinite(out.sobolev_part.max_ratio);
    out.weighted_part.pass = std::isfinite(out.weighted_part.max_ratio);
    return out;
}

double beta_case_ratio(const BetaLemmaCase& c) {
    const double scale = std::pow(c.t, -c.r);
    // Both endpoints are singular; reflecting the upper half keeps every
    // evaluation point well separated from its singularity, so (t - y) never
    // rounds to zero.
    const auto lower = [&c](double y) { return std::pow(c.t - y, -c.b) * std::pow(y, -c.a); };
    const auto upper = [&c](double y) { return std::pow(c.t - y, -c.a) * std::pow(y, -c.b); };
    const double integral = adaptive_quadrature(lower, 0.0, 0.5 * c.t, 0.5e-9 * scale) +
                            adaptive_quadrature(upper, 0.0, 0.5 * c.t, 0.5e-9 * scale);
    return integral / scale;
}

EstimateReport verify_beta_lemma(const std::vector<BetaLemmaCase>& cases) {
    EstimateReport report;
    report.name = "beta_lemma";
    report.n_samples = static_cast<int>(cases.size());
    report.bound_constant = 1.0;  // ratios normalized by the sharp value B(1-a, 1-b)
    report.pass = true;
    for (const auto& c : cases) {
        const double sharp = std::beta(1.0 - c.a, 1.0 - c.b);
        const double ratio = beta_case_ratio(c);
        report.max_ratio = std::max(report.max_ratio, ratio / sharp);
        if (!(std::abs(ratio - sharp) <= 1e-8)) report.pass = false;
    }
    return report;
}

AlphaCoverage alpha_case_coverage(const std::vector<SobolevIndex>& idx_list) {
    AlphaCoverage coverage;
    for (const auto& idx : idx_list) {
        AlphaCoverage::Entry e;
        e.s = idx.s;
        e.alpha = idx.alpha;
        // The boundary alpha = 7/16 (s = 1/4) belongs to the first case.
        e.proof_case = idx.alpha <= 7.0 / 16.0 ? 1 : 2;
        (e.proof_case == 1 ? coverage.first_case_covered : coverage.second_case_covered) = true;
        coverage.entries.push_back(e);
    }
    return coverage;
}

}  // namespace kmlab
