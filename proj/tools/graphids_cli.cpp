#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphids/config.hpp"
#include "graphids/io.hpp"

namespace {

std::vector<std::string> split_policies(const std::string& csv) {
    std::vector<std::string> out;
    for (auto& name : graphids::detail::split(csv, ',')) {
        name = graphids::detail::trim(name);
        bool known = false;
        for (const auto& id : graphids::policy_names()) known |= (id == name);
        if (!known) throw graphids::parse_error("unknown policy '" + name + "'");
        out.push_back(name);
    }
    if (out.empty()) throw graphids::parse_error("empty policy list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bandit simulation with graph-structured feedback"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
    std::string config_path;
    std::uint64_t seed = 0;
    int trials = 0, threads = -1;
    std::string out_dir, policies;
    run_cmd->add_option("--config", config_path, "Experiment config file")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override master seed");
    auto* trials_opt =
        run_cmd->add_option("--trials", trials, "Override trial count")->check(CLI::PositiveNumber);
    auto* out_opt = run_cmd->add_option("--out", out_dir, "Override output directory");
    auto* policies_opt =
        run_cmd->add_option("--policies", policies, "Override policy list (comma separated)");
    auto* threads_opt = run_cmd->add_option("--threads", threads, "Override worker thread count")
                            ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        graphids::ExperimentConfig cfg = graphids::parse_config(config_path);
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (trials_opt->count() > 0) cfg.trials = trials;
        if (out_opt->count() > 0) cfg.out = out_dir;
        if (policies_opt->count() > 0) cfg.policies = split_policies(policies);
        if (threads_opt->count() > 0) cfg.threads = threads;
        return graphids::run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
