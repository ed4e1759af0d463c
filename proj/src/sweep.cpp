#include "etcsim/sweep.hpp"

#include "etcsim/errors.hpp"
#include "etcsim/sim_engine.hpp"
#include "etcsim/trace_io.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

namespace etcsim {

using nlohmann::json;

SweepSpec sweep_from_json(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("sweep parse error: ") + e.what());
    }
    SweepSpec spec;
    const json& base = j.at("base_scenario");
    if (base.is_string()) {
        std::filesystem::path p(base.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        spec.base_scenario_json = read_file(p.string());
    } else {
        spec.base_scenario_json = base.dump();
    }
    spec.parameter = j.at("parameter").get<std::string>();
    if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty()) {
        throw ConfigError("sweep needs a non-empty values list");
    }
    for (const auto& v : j.at("values")) spec.values.push_back(v.dump());
    spec.repetitions = j.value("repetitions", 1);
    if (spec.repetitions < 1) throw ConfigError("sweep repetitions must be >= 1");
    return spec;
}

namespace {

json::json_pointer to_pointer(const std::string& dotted) {
    std::string p;
    for (char c : dotted) p += (c == '.') ? '/' : c;
    return json::json_pointer("/" + p);
}

json patched_scenario(const json& base, const std::string& parameter, const json& value) {
    const json::json_pointer ptr = to_pointer(parameter);
    if (!ptr.parent_pointer().empty() && !base.contains(ptr.parent_pointer())) {
        throw ConfigError("parameter path does not resolve: " + parameter);
    }
    json patched = base;
    patched[ptr] = value;
    return patched;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trend_of(const std::vector<double>& means) {
    bool non_increasing = true;
    bool non_decreasing = true;
    for (std::size_t k = 1; k < means.size(); ++k) {
        if (means[k] > means[k - 1] + 1e-12) non_increasing = false;
        if (means[k] < means[k - 1] - 1e-12) non_decreasing = false;
    }
    if (non_increasing && non_decreasing) return "constant";
    if (non_increasing) return "non-increasing";
    if (non_decreasing) return "non-decreasing";
    return "none";
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
    const json base = json::parse(spec.base_scenario_json);

    struct Task {
        std::string value;
        json scenario_json;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& value : spec.values) {
        const json jv = json::parse(value);
        const json patched = patched_scenario(base, spec.parameter, jv);
        const std::uint64_t base_seed = patched.value("seed", 0ull);
        for (int rep = 0; rep < spec.repetitions; ++rep) {
            json with_seed = patched;
            with_seed["seed"] = base_seed + static_cast<std::uint64_t>(rep);
            tasks.push_back({value, std::move(with_seed), base_seed + rep});
        }
    }

    // Validate the first patched scenario eagerly so a bad path or value
    // fails before any worker starts.
    {
        const Scenario probe = scenario_from_json(tasks.front().scenario_json.dump());
        const ValidationReport report = validate_scenario(probe);
        if (!report.ok()) {
            throw ConfigError("sweep base scenario invalid: " +
                              report.violations.front().predicate);
        }
    }

    SweepResult result;
    result.parameter = spec.parameter;
    result.rows.resize(tasks.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            try {
                const Scenario sc = scenario_from_json(tasks[k].scenario_json.dump());
                const Trace trace = run_scenario(sc);
                SweepRow row;
                row.value = tasks[k].value;
                row.seed = tasks[k].seed;
                row.summary = compute_metrics(trace);
                if (sc.trigger.kind == TriggerKind::TimeDependent) {
                    row.radius_bound =
                        time_dependent_radius(sc.trigger.c0, sc.graph.size(),
                                              spectral_summary(sc.graph));
                }
                result.rows[k] = std::move(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure = e.what();
            }
        }
    };

    const int n_workers = std::max(1, jobs);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int k = 0; k < n_workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw Error("sweep task failed: " + failure);

    // Per-value means across repetitions, in the listed value order.
    std::vector<double> event_means;
    std::vector<double> disagreement_means;
    for (std::size_t v = 0; v < spec.values.size(); ++v) {
        double events = 0.0;
        double dis = 0.0;
        for (int rep = 0; rep < spec.repetitions; ++rep) {
            const SweepRow& row = result.rows[v * spec.repetitions + rep];
            events += row.summary.total_events;
            dis += row.summary.final_disagreement;
        }
        event_means.push_back(events / spec.repetitions);
        disagreement_means.push_back(dis / spec.repetitions);
    }

    json trends;
    trends["parameter"] = spec.parameter;
    trends["total_events"] = trend_of(event_means);
    trends["final_disagreement"] = trend_of(disagreement_means);
    result.trends_json = trends.dump(2);

    if (spec.parameter.size() >= 5 &&
        spec.parameter.compare(spec.parameter.size() - 5, 5, "sigma") == 0 &&
        trends["total_events"] != "non-increasing" && trends["total_events"] != "constant") {
        result.warnings.push_back(
            "expected event count to be non-increasing in sigma; observed trend: " +
            trends["total_events"].get<std::string>());
    }
    for (const auto& row : result.rows) {
        if (!std::isnan(row.radius_bound) &&
            row.summary.final_disagreement > 1.1 * row.radius_bound) {
            result.warnings.push_back("value " + row.value + " seed " +
                                      std::to_string(row.seed) +
                                      ": final disagreement exceeds the reported radius bound");
        }
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "parameter,value,seed,total_events,min_interevent,mean_interevent,"
          "final_disagreement,V_end,time_to_tolerance,zeno_flag,radius_bound\n";
    for (const auto& row : result.rows) {
        os << result.parameter << "," << row.value << "," << row.seed << ","
           << row.summary.total_events << ",";
        if (row.summary.min_interevent) os << fmt(*row.summary.min_interevent);
        os << ",";
        if (row.summary.mean_interevent) os << fmt(*row.summary.mean_interevent);
        os << "," << fmt(row.summary.final_disagreement) << "," << fmt(row.summary.v_end) << ",";
        if (row.summary.time_to_tolerance) os << fmt(*row.summary.time_to_tolerance);
        os << "," << (row.summary.zeno_flag ? 1 : 0) << ",";
        if (!std::isnan(row.radius_bound)) os << fmt(row.radius_bound);
        os << "\n";
    }
    return os.str();
}

}  // namespace etcsim
