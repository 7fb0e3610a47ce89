#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twogrid/cli.hpp"

namespace {

// Exit codes: 0 success, 1 numerical-check failure, 2 usage/config error,
// 3 I/O error.
enum ExitCode { kOk = 0, kNumerical = 1, kUsage = 2, kIo = 3 };

struct Options {
    twogrid::RunConfig config;
    std::string problem = "advdiff2d";
    std::vector<long long> nc_list;
    std::string config_path;
};

// Plain key=value file sharing the long flag names. Loaded before flag
// parsing, so explicit flags override file values.
void apply_config_file(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in) throw twogrid::io_error("cannot open config file: " + path);

    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#' || line[start] == '%') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file: expected key=value, got: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "problem") {
            opt.problem = value;
        } else if (key == "grid-n") {
            opt.config.problem.grid_n = std::stoi(value);
        } else if (key == "alpha") {
            opt.config.problem.alpha = std::stod(value);
        } else if (key == "bx") {
            opt.config.problem.b_vec[0] = std::stod(value);
        } else if (key == "by") {
            opt.config.problem.b_vec[1] = std::stod(value);
        } else if (key == "n") {
            opt.config.problem.n = std::stoi(value);
        } else if (key == "density") {
            opt.config.problem.density = std::stod(value);
        } else if (key == "seed") {
            opt.config.problem.seed = std::stoull(value);
        } else if (key == "nc-list") {
            opt.nc_list.clear();
            std::stringstream items(value);
            std::string item;
            while (std::getline(items, item, ',')) opt.nc_list.push_back(std::stoll(item));
        } else if (key == "iters") {
            opt.config.power_iters = std::stoi(value);
        } else if (key == "spd") {
            opt.config.spd_mode = value == "true" || value == "1" || value == "yes";
        } else if (key == "out-dir") {
            opt.config.out_dir = value;
        } else if (key == "imag-tol") {
            opt.config.imag_tol = std::stod(value);
        } else if (key == "dense-limit") {
            opt.config.dense_limit = std::stoll(value);
        } else {
            throw std::invalid_argument("config file: unknown key: " + key);
        }
    }
}

// The config file must be loaded before CLI11 binds flag values, so the flag
// is located by a pre-scan of argv.
std::string find_config_flag(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

void attach_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "key=value config file; command-line flags win");
    cmd->add_option("--problem", opt.problem, "Operator family: poisson2d, advdiff2d, random")
        ->capture_default_str();
    cmd->add_option("--grid-n", opt.config.problem.grid_n,
                    "Interior grid points per dimension (poisson2d/advdiff2d)")
        ->capture_default_str();
    cmd->add_option("--alpha", opt.config.problem.alpha, "Diffusion coefficient (advdiff2d)")
        ->capture_default_str();
    cmd->add_option("--bx", opt.config.problem.b_vec[0], "Advection x-component (advdiff2d)")
        ->capture_default_str();
    cmd->add_option("--by", opt.config.problem.b_vec[1], "Advection y-component (advdiff2d)")
        ->capture_default_str();
    cmd->add_option("--n", opt.config.problem.n, "Matrix dimension (random)")
        ->capture_default_str();
    cmd->add_option("--density", opt.config.problem.density, "Nonzero fraction in (0,1] (random)")
        ->capture_default_str();
    cmd->add_option("--seed", opt.config.problem.seed,
                    "Generator seed (random family and power iteration)")
        ->capture_default_str();
    cmd->add_option("--nc-list", opt.nc_list, "Coarse-space sizes, ascending")->delimiter(',');
    cmd->add_option("--iters", opt.config.power_iters, "Power-method iterations")
        ->capture_default_str();
    cmd->add_flag("--spd", opt.config.spd_mode, "Analyze A directly instead of its block pairing");
    cmd->add_option("--out-dir", opt.config.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--imag-tol", opt.config.imag_tol,
                    "Relative imaginary-part tolerance for the pencil eigensolve")
        ->capture_default_str();
    cmd->add_option("--dense-limit", opt.config.dense_limit,
                    "Largest k admitted to dense verification")
        ->capture_default_str();
}

twogrid::RunConfig finalize(Options& opt) {
    opt.config.problem.kind = twogrid::problem_kind_from_string(opt.problem);
    opt.config.power_seed = opt.config.problem.seed;
    opt.config.nc_list.assign(opt.nc_list.begin(), opt.nc_list.end());
    twogrid::validate(opt.config.problem);
    return opt.config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-grid convergence laboratory for symmetric and nonsymmetric operators"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* gen = app.add_subcommand("gen", "Generate the operator and write Matrix Market files");
    CLI::App* verify = app.add_subcommand("verify", "Run the cross-module identity checks");
    CLI::App* sweep =
        app.add_subcommand("sweep", "Rate sweep over coarse-space sizes; writes CSV and SVG");
    CLI::App* spy = app.add_subcommand("spy", "Write a sparsity plot of the operator");
    CLI::App* spectrum = app.add_subcommand("spectrum", "Write the pencil spectrum as CSV");
    for (CLI::App* cmd : {gen, verify, sweep, spy, spectrum}) attach_common_flags(cmd, opt);
    spectrum->add_flag("--dump-vectors", opt.config.dump_vectors,
                       "Also write the eigenvector matrix (Matrix Market array)");

    try {
        const std::string config_path = find_config_flag(argc, argv);
        if (!config_path.empty()) apply_config_file(config_path, opt);
    } catch (const twogrid::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        const twogrid::RunConfig config = finalize(opt);
        if (gen->parsed()) {
            twogrid::cmd_gen(config, std::cout);
        } else if (verify->parsed()) {
            if (!twogrid::cmd_verify(config, std::cout).all_pass()) return kNumerical;
        } else if (sweep->parsed()) {
            twogrid::cmd_sweep(config, std::cout);
        } else if (spy->parsed()) {
            twogrid::cmd_spy(config, std::cout);
        } else if (spectrum->parsed()) {
            twogrid::cmd_spectrum(config, std::cout);
        }
    } catch (const twogrid::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kIo;
    } catch (const twogrid::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumerical;
    }
    return kOk;
}
