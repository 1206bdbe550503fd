// Sectioned key-value run configuration.  Parsing is strict: unknown
// sections or keys are rejected with the offending name in the message, and
// every numeric value is echoed back exactly as parsed.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmlab/dynamics.hpp"

namespace kmlab {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    // [grid]
    int n_points = 1024;
    double half_length = 32.0 * M_PI;
    // [model]
    double mu = 0.0;
    MuSign mu_sign = MuSign::paper;
    std::optional<double> beta;
    std::optional<double> d_s;
    std::optional<double> d_i;
    // [space]
    double s = 1.0;
    // [solver]
    double T = 0.1;
    int n_t = 100;
    double tol = 1e-10;
    int max_iter = 50;
    // [experiment]
    std::string kind = "verify";
    std::uint64_t seed = 1;
    int n_samples = 100;
    std::string output_format = "json";
    double budget = 1e-5;                   // cross-solver agreement budget for `oracle`
    std::optional<double> c_ell;            // gate constants; measured when absent
    std::optional<double> c_b;
    std::string checks = "all";             // comma list of estimate checks for `verify`
    // [data]
    std::string data_u = "constant(0)";
    std::string data_v = "constant(0)";
    // [sweep]
    std::vector<double> sweep_s = {0.0, 1.0};
    std::vector<double> sweep_T = {0.1};
    std::vector<std::uint64_t> sweep_seeds = {1};

    GridSpec grid() const { return GridSpec(n_points, half_length); }
    KmParams params() const;
    SobolevIndex sobolev_index() const { return SobolevIndex(s); }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Applies a "section.key=value" override in place.
void apply_override(RunConfig& config, const std::string& assignment);

// Initial-data library: gaussian_bump(center,width,height),
// band_limited(seed,cutoff,amplitude), constant(value).
RealField make_initial_data(const std::string& descriptor, const GridSpec& grid);

}  // namespace kmlab
