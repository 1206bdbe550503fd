#include "kmlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "kmlab/estimates.hpp"
#include "kmlab/oracles.hpp"
#include "kmlab/picard.hpp"
#include "kmlab/runio.hpp"
#include "kmlab/spaces.hpp"

namespace kmlab {

namespace {

std::string short_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

std::optional<WellPosednessGate> explicit_gate(const RunConfig& config) {
    if (config.c_ell && config.c_b)
        return WellPosednessGate(*config.c_ell, *config.c_b, config.mu);
    return std::nullopt;
}

// Gate constants from the config when supplied, otherwise measured on the
// run's own grid and resolution.
WellPosednessGate resolve_gate(const RunConfig& config) {
    if (auto g = explicit_gate(config)) return *g;
    const GridSpec grid = config.grid();
    const SobolevIndex idx = config.sobolev_index();
    const double c_ell =
        config.c_ell ? *config.c_ell
                     : verify_linear_estimate(config.seed, config.n_samples, idx, config.T,
                                              config.n_t, grid)
                           .max_ratio;
    const double c_b = config.c_b
                           ? *config.c_b
                           : verify_bilinear(config.seed, config.n_samples, idx, config.T,
                                             config.n_t, grid)
                                 .max_ratio;
    return WellPosednessGate(c_ell, c_b, config.mu);
}

bool wants_check(const std::vector<std::string>& checks, const std::string& name) {
    for (const auto& c : checks)
        if (c == "all" || c == name) return true;
    return false;
}

std::vector<std::string> split_checks(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::string reports_csv(const std::vector<EstimateReport>& reports) {
    std::ostringstream out;
    out << "name,n_samples,seed,max_ratio,bound_constant,pass\n";
    for (const EstimateReport& r : reports) {
        out << r.name << ',' << r.n_samples << ',' << r.seed << ',' << format_double(r.max_ratio)
            << ',';
        if (r.bound_constant) out << format_double(*r.bound_constant);
        out << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string write_reports(const std::vector<EstimateReport>& reports, const RunConfig& config,
                          const RunOptions& options, const std::string& stem) {
    const bool csv = config.output_format == "csv";
    const std::filesystem::path path =
        std::filesystem::path(options.out_dir) / (stem + (csv ? ".csv" : ".json"));
    atomic_write_file(path, csv ? reports_csv(reports) : reports_json(reports));
    return path.string();
}

bool all_pass(const std::vector<EstimateReport>& reports) {
    for (const EstimateReport& r : reports)
        if (!r.pass) return false;
    return true;
}

void run_solve(const RunConfig& config, const RunOptions& options, RunRecord& record) {
    const GridSpec grid = config.grid();
    const RealField phi = make_initial_data(config.data_u, grid);
    const RealField psi = make_initial_data(config.data_v, grid);
    const PicardResult result =
        picard_solve(phi, psi, config.params(), config.sobolev_index(), config.T, config.n_t,
                     config.tol, config.max_iter, explicit_gate(config));

    const std::filesystem::path out(options.out_dir);
    const std::filesystem::path traj_path = out / "trajectory.csv";
    atomic_write_file(traj_path, trajectory_csv(result.trajectory));
    record.outputs.push_back(traj_path.string());
    if (options.dump_fields) {
        for (size_t i = 0; i < result.trajectory.states.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "slice_%04zu.csv", i);
            const std::filesystem::path p = out / name;
            atomic_write_file(p, slice_csv(result.trajectory.states[i]));
            record.outputs.push_back(p.string());
        }
    }
    record.all_pass = result.diagnostics.converged;
}

void run_oracle(const RunConfig& config, const RunOptions& options, RunRecord& record) {
    const GridSpec grid = config.grid();
    const RealField phi = make_initial_data(config.data_u, grid);
    const RealField psi = make_initial_data(config.data_v, grid);
    const KmParams params = config.params();
    const SobolevIndex idx = config.sobolev_index();

    const PicardResult picard =
        picard_solve(phi, psi, params, idx, config.T, config.n_t, config.tol, config.max_iter);

    // The splitting run takes ten substeps per Picard slice so the two
    // solvers share comparison times exactly.
    const int refine = 10;
    const Trajectory split =
        splitting_solve(phi, psi, params, config.T, config.T / (refine * config.n_t));

    double max_diff = 0.0;
    for (int i = 0; i <= config.n_t; ++i) {
        const KmState& a = picard.trajectory.states[static_cast<size_t>(i)];
        const KmState& b = split.states[static_cast<size_t>(i * refine)];
        RealField du(grid), dv(grid);
        for (int j = 0; j < grid.n_points; ++j) {
            du.samples[static_cast<size_t>(j)] =
                a.u.samples[static_cast<size_t>(j)] - b.u.samples[static_cast<size_t>(j)];
            dv.samples[static_cast<size_t>(j)] =
                a.v.samples[static_cast<size_t>(j)] - b.v.samples[static_cast<size_t>(j)];
        }
        max_diff = std::max({max_diff, lp_norm(du, 2.0), lp_norm(dv, 2.0)});
    }

    std::vector<EstimateReport> reports;
    EstimateReport cross;
    cross.name = "cross_solver_sup_l2";
    cross.parameters = {{"T", config.T},
                        {"n_t", static_cast<double>(config.n_t)},
                        {"splitting_dt", config.T / (refine * config.n_t)}};
    cross.n_samples = 1;
    cross.seed = config.seed;
    cross.max_ratio = max_diff;
    cross.bound_constant = config.budget;
    cross.pass = max_diff <= config.budget;
    reports.push_back(cross);

    // Spatially constant data reduces the PDE to the two-component ODE
    // system, which RK4 integrates independently.
    const auto is_constant = [](const RealField& f) {
        for (double v : f.samples)
            if (v != f.samples[0]) return false;
        return true;
    };
    if (is_constant(phi) && is_constant(psi)) {
        const OdeTrajectory ode = rk4_sir(phi.samples[0], psi.samples[0], params.mu,
                                          params.mu_sign, config.T, config.T / (100 * config.n_t));
        double max_ode_diff = 0.0;
        const size_t stride = (ode.times.size() - 1) / static_cast<size_t>(config.n_t);
        for (int i = 0; i <= config.n_t; ++i) {
            const KmState& st = picard.trajectory.states[static_cast<size_t>(i)];
            const auto& ref = ode.uv[static_cast<size_t>(i) * stride];
            for (int j = 0; j < grid.n_points; ++j) {
                max_ode_diff =
                    std::max({max_ode_diff, std::abs(st.u.samples[static_cast<size_t>(j)] - ref[0]),
                              std::abs(st.v.samples[static_cast<size_t>(j)] - ref[1])});
            }
        }
        EstimateReport ode_report;
        ode_report.name = "sir_reduction_sup";
        ode_report.parameters = {{"T", config.T},
                                 {"n_t", static_cast<double>(config.n_t)},
                                 {"mu", config.mu}};
        ode_report.n_samples = 1;
        ode_report.seed = config.seed;
        ode_report.max_ratio = max_ode_diff;
        ode_report.bound_constant = config.budget;
        ode_report.pass = max_ode_diff <= config.budget;
        reports.push_back(ode_report);
    }

    record.outputs.push_back(write_reports(reports, config, options, "oracle_report"));
    record.all_pass = all_pass(reports);
}

void run_verify(const RunConfig& config, const RunOptions& options, RunRecord& record) {
    const GridSpec grid = config.grid();
    const SobolevIndex idx = config.sobolev_index();
    const std::vector<std::string> checks = split_checks(config.checks);
    const std::vector<double> times = {0.01, 0.1, 1.0};
    std::vector<EstimateReport> reports;

    if (wants_check(checks, "heat_lp_lq")) {
        for (const auto& [q, p] : std::vector<std::pair<double, double>>{{2, 2}, {2, 4}, {1, kPInf}})
            reports.push_back(verify_heat_lp_lq(config.seed, config.n_samples, q, p, times, grid));
    }
    if (wants_check(checks, "riesz_smoothing"))
        reports.push_back(
            verify_riesz_smoothing(config.seed, config.n_samples, {0.0, 0.5, 1.0, 1.5}, times, grid));
    if (wants_check(checks, "hls"))
        reports.push_back(verify_hls(config.seed, config.n_samples, 0.25, 2.0, 4.0, grid));
    if (wants_check(checks, "linear"))
        reports.push_back(
            verify_linear_estimate(config.seed, config.n_samples, idx, config.T, config.n_t, grid));
    if (wants_check(checks, "bilinear"))
        reports.push_back(
            verify_bilinear(config.seed, config.n_samples, idx, config.T, config.n_t, grid));
    if (wants_check(checks, "lem1")) {
        const Lem1Report lem1 =
            verify_lem1_components(config.seed, config.n_samples, idx, config.T, config.n_t, grid);
        reports.push_back(lem1.sobolev_part);
        reports.push_back(lem1.weighted_part);
    }
    if (wants_check(checks, "beta")) {
        const std::vector<double> exponents = {0.5, 0.575, 0.65, 0.75, 0.875};
        std::vector<BetaLemmaCase> cases;
        for (double a : exponents)
            for (double b : exponents)
                for (double t : {0.1, 1.0, 10.0}) cases.emplace_back(a, b, t);
        reports.push_back(verify_beta_lemma(cases));
    }
    if (wants_check(checks, "alpha")) {
        std::vector<SobolevIndex> idx_list;
        for (double s : {0.0, 0.5, 1.0, 1.5, 1.9}) idx_list.emplace_back(s);
        const AlphaCoverage cov = alpha_case_coverage(idx_list);
        EstimateReport r;
        r.name = "alpha_case_coverage";
        for (const auto& e : cov.entries)
            r.parameters.emplace_back("case_at_s_" + short_number(e.s),
                                      static_cast<double>(e.proof_case));
        r.n_samples = static_cast<int>(cov.entries.size());
        r.seed = config.seed;
        r.max_ratio = 0.0;
        r.pass = cov.first_case_covered && cov.second_case_covered;
        reports.push_back(r);
    }
    if (reports.empty()) throw ConfigError("config: experiment.checks selected nothing");

    record.outputs.push_back(write_reports(reports, config, options, "verify_report"));
    record.all_pass = all_pass(reports);
}

void run_contraction(const RunConfig& config, const RunOptions& options, RunRecord& record) {
    const GridSpec grid = config.grid();
    const SobolevIndex idx = config.sobolev_index();
    const WellPosednessGate gate = resolve_gate(config);
    const RealField phi = make_initial_data(config.data_u, grid);
    const RealField psi = make_initial_data(config.data_v, grid);

    const ContractionProbe probe = contraction_probe(phi, psi, config.params(), idx, config.T,
                                                     config.n_t, gate, config.seed,
                                                     config.n_samples);

    EstimateReport r;
    r.name = "contraction_probe";
    r.parameters = {{"rho", gate.rho()},
                    {"theoretical_factor", probe.theoretical_factor},
                    {"T", config.T},
                    {"mu", config.mu},
                    {"c_ell_hat", gate.c_ell_hat},
                    {"c_b_hat", gate.c_b_hat}};
    r.n_samples = config.n_samples;
    r.seed = config.seed;
    r.max_ratio = probe.max_ratio;
    r.bound_constant = 1.0;
    r.pass = probe.max_ratio < 1.0;

    record.outputs.push_back(write_reports({r}, config, options, "contraction_report"));
    record.all_pass = r.pass;
}

void run_lipschitz(const RunConfig& config, const RunOptions& options, RunRecord& record) {
    const SobolevIndex idx = config.sobolev_index();
    const WellPosednessGate gate = resolve_gate(config);

    const LipschitzProbe probe =
        lipschitz_probe(config.params(), idx, config.T, config.n_t, gate, config.seed,
                        config.n_samples);

    EstimateReport r;
    r.name = "lipschitz_probe";
    r.parameters = {{"bound", probe.bound},
                    {"contraction_factor", probe.contraction_factor},
                    {"T", config.T},
                    {"mu", config.mu},
                    {"c_ell_hat", gate.c_ell_hat},
                    {"c_b_hat", gate.c_b_hat}};
    r.n_samples = config.n_samples;
    r.seed = config.seed;
    r.max_ratio = probe.max_ratio;
    r.bound_constant = probe.bound;
    r.pass = probe.max_ratio <= probe.bound;

    record.outputs.push_back(write_reports({r}, config, options, "lipschitz_report"));
    record.all_pass = r.pass;
}

void run_sweep(const RunConfig& config, const RunOptions& options, RunRecord& record) {
    struct Entry {
        std::string key;
        RunConfig config;
        std::string path;
        std::string hash;
        bool converged = false;
        std::string error;
    };

    std::vector<Entry> entries;
    for (double s : config.sweep_s)
        for (double T : config.sweep_T)
            for (std::uint64_t seed : config.sweep_seeds) {
                Entry e;
                e.config = config;
                e.config.kind = "solve";
                e.config.s = s;
                e.config.T = T;
                e.config.seed = seed;
                e.key = "s" + short_number(s) + "_T" + short_number(T) + "_seed" +
                        std::to_string(seed);
                e.path = (std::filesystem::path(options.out_dir) /
                          ("trajectory_" + e.key + ".csv"))
                             .string();
                entries.push_back(std::move(e));
            }

    std::mutex mu;
    size_t next = 0;
    const auto worker = [&]() {
        for (;;) {
            size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= entries.size()) return;
                i = next++;
            }
            Entry& e = entries[i];
            try {
                const GridSpec grid = e.config.grid();
                const RealField phi = make_initial_data(e.config.data_u, grid);
                const RealField psi = make_initial_data(e.config.data_v, grid);
                const PicardResult result =
                    picard_solve(phi, psi, e.config.params(), e.config.sobolev_index(), e.config.T,
                                 e.config.n_t, e.config.tol, e.config.max_iter,
                                 explicit_gate(e.config));
                const std::string csv = trajectory_csv(result.trajectory);
                atomic_write_file(e.path, csv);
                e.hash = content_hash(csv);
                e.converged = result.diagnostics.converged;
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
        }
    };

    const unsigned n_workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(entries.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.key < b.key; });

    bool ok = true;
    std::ostringstream out;
    out << "[\n";
    for (size_t i = 0; i < entries.size(); ++i) {
        const Entry& e = entries[i];
        const bool pass = e.converged && e.error.empty();
        ok = ok && pass;
        out << "  {\"key\": \"" << e.key << "\", \"s\": " << format_double(e.config.s)
            << ", \"T\": " << format_double(e.config.T) << ", \"seed\": " << e.config.seed
            << ", \"converged\": " << (pass ? "true" : "false") << ", \"hash\": \""
            << (e.error.empty() ? e.hash : std::string()) << "\"}";
        if (i + 1 < entries.size()) out << ',';
        out << '\n';
        if (e.error.empty()) record.outputs.push_back(e.path);
    }
    out << "]\n";

    const std::filesystem::path summary =
        std::filesystem::path(options.out_dir) / "sweep_summary.json";
    atomic_write_file(summary, out.str());
    record.outputs.push_back(summary.string());
    record.all_pass = ok;
}

}  // namespace

std::string echo_config(const RunConfig& config) {
    std::ostringstream out;
    out << "[grid]\n"
        << "n_points = " << config.n_points << "\n"
        << "half_length = " << format_double(config.half_length) << "\n"
        << "[model]\n"
        << "mu = " << format_double(config.mu) << "\n"
        << "mu_sign = " << (config.mu_sign == MuSign::paper ? "paper" : "epidemiological") << "\n";
    if (config.beta) out << "beta = " << format_double(*config.beta) << "\n";
    if (config.d_s) out << "d_s = " << format_double(*config.d_s) << "\n";
    if (config.d_i) out << "d_i = " << format_double(*config.d_i) << "\n";
    out << "[space]\n"
        << "s = " << format_double(config.s) << "\n"
        << "[solver]\n"
        << "T = " << format_double(config.T) << "\n"
        << "n_t = " << config.n_t << "\n"
        << "tol = " << format_double(config.tol) << "\n"
        << "max_iter = " << config.max_iter << "\n"
        << "[experiment]\n"
        << "kind = " << config.kind << "\n"
        << "seed = " << config.seed << "\n"
        << "n_samples = " << config.n_samples << "\n"
        << "output_format = " << config.output_format << "\n"
        << "budget = " << format_double(config.budget) << "\n";
    if (config.c_ell) out << "c_ell = " << format_double(*config.c_ell) << "\n";
    if (config.c_b) out << "c_b = " << format_double(*config.c_b) << "\n";
    out << "checks = " << config.checks << "\n"
        << "[data]\n"
        << "u = " << config.data_u << "\n"
        << "v = " << config.data_v << "\n"
        << "[sweep]\n";
    const auto join = [&out](const char* key, const auto& values, const auto& fmt) {
        out << key << " = ";
        for (size_t i = 0; i < values.size(); ++i) {
            if (i > 0) out << ", ";
            out << fmt(values[i]);
        }
        out << "\n";
    };
    join("s_values", config.sweep_s, [](double v) { return format_double(v); });
    join("T_values", config.sweep_T, [](double v) { return format_double(v); });
    join("seeds", config.sweep_seeds, [](std::uint64_t v) { return std::to_string(v); });
    return out.str();
}

RunRecord run(const RunConfig& config, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();

    RunRecord record;
    record.config_echo = echo_config(config);
    record.input_hash = content_hash(record.config_echo);

    std::filesystem::create_directories(options.out_dir);

    if (config.kind == "solve")
        run_solve(config, options, record);
    else if (config.kind == "oracle")
        run_oracle(config, options, record);
    else if (config.kind == "verify")
        run_verify(config, options, record);
    else if (config.kind == "contraction")
        run_contraction(config, options, record);
    else if (config.kind == "lipschitz")
        run_lipschitz(config, options, record);
    else if (config.kind == "sweep")
        run_sweep(config, options, record);
    else
        throw ConfigError("config: unknown experiment.kind '" + config.kind + "'");

    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

}  // namespace kmlab
