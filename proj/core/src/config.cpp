#include "kmlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kmlab/spectral.hpp"

namespace kmlab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: invalid number for key '" + key + "': " + value);
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: invalid integer for key '" + key + "': " + value);
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

void assign(RunConfig& config, const std::string& section, const std::string& key,
            const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "grid") {
        if (key == "n_points") config.n_points = static_cast<int>(parse_integer(full, value));
        else if (key == "half_length") config.half_length = parse_number(full, value);
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "model") {
        if (key == "mu") config.mu = parse_number(full, value);
        else if (key == "mu_sign") {
            if (value == "paper") config.mu_sign = MuSign::paper;
            else if (value == "epidemiological") config.mu_sign = MuSign::epidemiological;
            else throw ConfigError("config: invalid value for 'model.mu_sign': " + value);
        } else if (key == "beta") config.beta = parse_number(full, value);
        else if (key == "d_s") config.d_s = parse_number(full, value);
        else if (key == "d_i") config.d_i = parse_number(full, value);
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "space") {
        if (key == "s") config.s = parse_number(full, value);
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "solver") {
        if (key == "T") config.T = parse_number(full, value);
        else if (key == "n_t") config.n_t = static_cast<int>(parse_integer(full, value));
        else if (key == "tol") config.tol = parse_number(full, value);
        else if (key == "max_iter") config.max_iter = static_cast<int>(parse_integer(full, value));
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "experiment") {
        if (key == "kind") config.kind = value;
        else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_integer(full, value));
        else if (key == "n_samples") config.n_samples = static_cast<int>(parse_integer(full, value));
        else if (key == "output_format") {
            if (value != "csv" && value != "json")
                throw ConfigError("config: invalid value for 'experiment.output_format': " + value);
            config.output_format = value;
        } else if (key == "budget") config.budget = parse_number(full, value);
        else if (key == "c_ell") config.c_ell = parse_number(full, value);
        else if (key == "c_b") config.c_b = parse_number(full, value);
        else if (key == "checks") config.checks = value;
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "data") {
        if (key == "u") config.data_u = value;
        else if (key == "v") config.data_v = value;
        else throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "sweep") {
        if (key == "s_values") {
            config.sweep_s.clear();
            for (const auto& p : split_list(value)) config.sweep_s.push_back(parse_number(full, p));
        } else if (key == "T_values") {
            config.sweep_T.clear();
            for (const auto& p : split_list(value)) config.sweep_T.push_back(parse_number(full, p));
        } else if (key == "seeds") {
            config.sweep_seeds.clear();
            for (const auto& p : split_list(value))
                config.sweep_seeds.push_back(static_cast<std::uint64_t>(parse_integer(full, p)));
        } else {
            throw ConfigError("config: unknown key '" + full + "'");
        }
    } else {
        throw ConfigError("config: unknown section '" + section + "'");
    }
}

void validate(const RunConfig& config) {
    config.grid().validate();
    config.params().validate();
    (void)config.sobolev_index();
    if (!(config.T > 0.0) || config.n_t < 2 || !(config.tol > 0.0) || config.max_iter < 1)
        throw ConfigError("config: invalid solver parameters");
    if (config.n_samples < 1) throw ConfigError("config: experiment.n_samples must be >= 1");
    static const char* kinds[] = {"solve", "oracle", "verify", "contraction", "lipschitz", "sweep"};
    bool known = false;
    for (const char* k : kinds) known = known || config.kind == k;
    if (!known) throw ConfigError("config: unknown experiment.kind '" + config.kind + "'");
}

}  // namespace

KmParams RunConfig::params() const {
    KmParams p;
    p.mu = mu;
    p.mu_sign = mu_sign;
    p.beta = beta;
    p.d_s = d_s;
    p.d_i = d_i;
    return p;
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::stringstream ss(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key=value at line " + std::to_string(line_no));
        if (section.empty())
            throw ConfigError("config: key outside any section at line " + std::to_string(line_no));
        assign(config, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate(config);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(RunConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError("config: override must look like section.key=value: " + assignment);
    assign(config, trim(assignment.substr(0, dot)),
           trim(assignment.substr(dot + 1, eq - dot - 1)), trim(assignment.substr(eq + 1)));
    validate(config);
}

RealField make_initial_data(const std::string& descriptor, const GridSpec& grid) {
    const auto open = descriptor.find('(');
    if (open == std::string::npos || descriptor.back() != ')')
        throw ConfigError("data: descriptor must look like name(args): " + descriptor);
    const std::string name = trim(descriptor.substr(0, open));
    std::vector<double> args;
    for (const auto& p : split_list(descriptor.substr(open + 1, descriptor.size() - open - 2)))
        args.push_back(parse_number("data", p));

    if (name == "constant") {
        if (args.size() != 1) throw ConfigError("data: constant(value) takes one argument");
        RealField f(grid);
        for (auto& v : f.samples) v = args[0];
        return f;
    }
    if (name == "gaussian_bump") {
        if (args.size() != 3)
            throw ConfigError("data: gaussian_bump(center,width,height) takes three arguments");
        return gaussian_bump(args[0], args[1], args[2], grid);
    }
    if (name == "band_limited") {
        if (args.size() != 3)
            throw ConfigError("data: band_limited(seed,cutoff,amplitude) takes three arguments");
        return random_band_limited_field(static_cast<std::uint64_t>(args[0]),
                                         static_cast<int>(args[1]), args[2], grid);
    }
    throw ConfigError("data: unknown initial-data name '" + name + "'");
}

}  // namespace kmlab
