#include "varmult/acceptance.hpp"
#include "varmult/config.hpp"
#include "varmult/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

namespace {

int cmd_run(const std::string& config_path, const std::string& output_override) {
    varmult::ExperimentConfig cfg = varmult::load_config(config_path);
    if (!output_override.empty()) cfg.output = output_override;
    const varmult::RunArtifacts art = varmult::run_experiment(cfg);
    std::printf("csv:     %s\n", art.csv_path.c_str());
    std::printf("summary: %s\n", art.summary_path.c_str());
    std::printf("result:  %s (%d/%d assertions)\n", art.passed ? "PASS" : "FAIL",
                art.assertions_total - art.assertions_failed, art.assertions_total);
    return art.passed ? 0 : 1;
}

int cmd_list() {
    for (const varmult::ExperimentInfo& info : varmult::list_experiments())
        std::printf("%-26s %s\n", info.name.c_str(), info.description.c_str());
    return 0;
}

int cmd_selftest() {
    const std::vector<varmult::CriterionResult> results =
        varmult::run_acceptance({1, 2, 3, 4, 5, 6, 7, 8, 10});
    bool all = true;
    for (const varmult::CriterionResult& r : results) {
        std::puts(varmult::format_criterion(r).c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variation-space multiplier laboratory"};
    app.require_subcommand(1);

    std::string config_path, output_override;
    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "path to a key = value config file")
        ->required();
    run->add_option("--output", output_override, "override the output directory");

    CLI::App* list = app.add_subcommand("list", "list registered experiments");
    CLI::App* selftest =
        app.add_subcommand("selftest", "run the fast acceptance criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, output_override);
        if (list->parsed()) return cmd_list();
        if (selftest->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "varmult-lab: %s\n", e.what());
        return 2;
    }
    return 0;
}
