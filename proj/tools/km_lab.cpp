// Command-line front end.  Subcommands map one-to-one onto the run kinds;
// flags override the loaded config.  Output directory resolution:
// --out > KMLAB_OUT > current directory.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmlab/config.hpp"
#include "kmlab/picard.hpp"
#include "kmlab/runio.hpp"
#include "kmlab/runner.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool dump_fields = false;
    bool have_seed = false;
    std::uint64_t seed = 0;
    std::string format;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config_path, "Config file path");
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--seed", args.seed, "Experiment seed override")
        ->each([&args](const std::string&) { args.have_seed = true; });
    cmd->add_option("--format", args.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--fields", args.dump_fields, "Dump one CSV per time slice (solve only)");
    cmd->add_option("--set", args.overrides, "Override as section.key=value")
        ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral well-posedness laboratory for a diffusive SIR system"};
    app.require_subcommand(1);

    CliArgs args;
    const std::vector<std::string> kinds = {"solve",       "oracle",    "verify",
                                            "contraction", "lipschitz", "sweep"};
    for (const auto& kind : kinds) add_common_flags(app.add_subcommand(kind), args);

    CLI11_PARSE(app, argc, argv);
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        kmlab::RunConfig config =
            args.config_path.empty() ? kmlab::RunConfig{} : kmlab::load_config(args.config_path);
        config.kind = kind;
        if (args.have_seed) config.seed = args.seed;
        if (!args.format.empty()) config.output_format = args.format;
        for (const auto& ov : args.overrides) kmlab::apply_override(config, ov);
        config.kind = kind;  // subcommand wins over any [experiment] kind setting

        kmlab::RunOptions options;
        options.dump_fields = args.dump_fields;
        if (!args.out_dir.empty()) {
            options.out_dir = args.out_dir;
        } else if (const char* env = std::getenv("KMLAB_OUT"); env && *env) {
            options.out_dir = env;
        }

        const kmlab::RunRecord record = kmlab::run(config, options);

        std::cout << "input_hash: " << record.input_hash << "\n";
        for (const auto& path : record.outputs) std::cout << "output: " << path << "\n";
        std::cout << "duration_seconds: " << kmlab::format_double(record.duration_seconds) << "\n";
        std::cout << "all_pass: " << (record.all_pass ? "true" : "false") << "\n";
        return record.all_pass ? 0 : 1;
    } catch (const kmlab::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kmlab::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "iterations: " << e.diagnostics.iterations << "\n";
        for (double d : e.diagnostics.successive_diffs)
            std::cerr << "successive_diff: " << kmlab::format_double(d) << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
