#include "etcsim/cli.hpp"

#include "etcsim/errors.hpp"
#include "etcsim/metrics.hpp"
#include "etcsim/sim_engine.hpp"
#include "etcsim/sweep.hpp"
#include "etcsim/trace_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace etcsim {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

}  // namespace

int cmd_validate(const std::string& scenario_path) {
    Scenario sc;
    try {
        sc = load_scenario_file(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    const ValidationReport report = validate_scenario(sc);
    if (!report.ok()) {
        std::cout << report.to_text();
        return kExitInvalid;
    }
    std::cout << "valid\n";
    return kExitOk;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override) {
    Scenario sc;
    try {
        sc = load_scenario_file(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    if (seed_override) sc.seed = *seed_override;

    const ValidationReport report = validate_scenario(sc);
    if (!report.ok()) {
        std::cout << report.to_text();
        return kExitInvalid;
    }

    Trace trace;
    try {
        trace = run_scenario(sc);
    } catch (const NumericsError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    const RunSummary summary = compute_metrics(trace);
    write_file((out / "trace.csv").string(), trace_to_csv(trace));
    write_file((out / "events.csv").string(), events_to_csv(trace));
    write_file((out / "summary.json").string(), summary_to_json(summary));

    std::printf("events=%d final_disagreement=%.6g zeno=%d\n", summary.total_events,
                summary.final_disagreement, summary.zeno_flag ? 1 : 0);
    return summary.zeno_flag ? kExitRuntime : kExitOk;
}

int cmd_sweep(const std::string& sweep_path, const std::string& out_dir, int jobs) {
    if (const char* env = std::getenv("ETC_SIM_JOBS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) jobs = parsed;
    }
    SweepSpec spec;
    try {
        spec = sweep_from_json(read_file(sweep_path),
                               std::filesystem::path(sweep_path).parent_path().string());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    SweepResult result;
    try {
        result = run_sweep(spec, jobs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    write_file((out / "sweep.csv").string(), sweep_to_csv(result));
    write_file((out / "trends.json").string(), result.trends_json);
    for (const auto& warning : result.warnings) {
        std::cout << "warning: " << warning << "\n";
    }
    std::printf("rows=%zu parameter=%s\n", result.rows.size(), result.parameter.c_str());
    return kExitOk;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"event-triggered consensus simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string sweep_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;

    CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("file", scenario_path, "scenario JSON")->required();

    CLI::App* run = app.add_subcommand("run", "simulate one scenario");
    run->add_option("file", scenario_path, "scenario JSON")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seed", seed, "override the scenario seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("file", sweep_path, "sweep JSON")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--jobs", jobs, "worker threads (ETC_SIM_JOBS overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (validate->parsed()) return cmd_validate(scenario_path);
    if (run->parsed()) {
        return cmd_run(scenario_path, out_dir,
                       seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt);
    }
    return cmd_sweep(sweep_path, out_dir, jobs);
}

}  // namespace etcsim
