#include "etcsim/metrics.hpp"

#include "etcsim/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace etcsim {

using nlohmann::json;

std::vector<std::vector<double>> Trace::per_agent_event_times() const {
    std::vector<std::vector<double>> out(n_agents);
    for (const auto& ev : events) out[ev.agent].push_back(ev.t);
    return out;
}

RunSummary compute_metrics(const Trace& trace, double tolerance) {
    RunSummary s;
    s.total_events = static_cast<int>(trace.events.size());
    s.zeno_flag = trace.zeno.flagged;
    s.zeno_diagnostic = trace.zeno.diagnostic;
    if (!trace.t.empty()) {
        s.final_disagreement = trace.disagreement.back();
        s.v_end = trace.lyapunov.back();
    }
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        if (trace.disagreement[k] < tolerance) {
            s.time_to_tolerance = trace.t[k];
            break;
        }
    }

    std::vector<double> all_gaps;
    const auto per_agent = trace.per_agent_event_times();
    for (int i = 0; i < trace.n_agents; ++i) {
        AgentEventStats st;
        st.agent = i + 1;
        st.count = static_cast<int>(per_agent[i].size());
        if (st.count >= 2) {
            double min_gap = std::numeric_limits<double>::infinity();
            double sum = 0.0;
            for (std::size_t k = 1; k < per_agent[i].size(); ++k) {
                const double gap = per_agent[i][k] - per_agent[i][k - 1];
                min_gap = std::min(min_gap, gap);
                sum += gap;
                all_gaps.push_back(gap);
            }
            st.min_interevent = min_gap;
            st.mean_interevent = sum / (st.count - 1);
        }
        s.per_agent.push_back(st);
    }
    if (!all_gaps.empty()) {
        s.min_interevent = *std::min_element(all_gaps.begin(), all_gaps.end());
        s.mean_interevent =
            std::accumulate(all_gaps.begin(), all_gaps.end(), 0.0) / all_gaps.size();
    }
    return s;
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

std::string summary_to_json(const RunSummary& s) {
    json j;
    j["total_events"] = s.total_events;
    json agents = json::array();
    for (const auto& a : s.per_agent) {
        agents.push_back({{"agent", a.agent},
                          {"events", a.count},
                          {"min_interevent", opt(a.min_interevent)},
                          {"mean_interevent", opt(a.mean_interevent)}});
    }
    j["per_agent"] = std::move(agents);
    j["min_interevent"] = opt(s.min_interevent);
    j["mean_interevent"] = opt(s.mean_interevent);
    j["final_disagreement"] = s.final_disagreement;
    j["V_end"] = s.v_end;
    j["time_to_tolerance"] = opt(s.time_to_tolerance);
    j["zeno_flag"] = s.zeno_flag;
    j["zeno_diagnostic"] = s.zeno_diagnostic;
    return j.dump(2);
}

RunSummary summary_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunSummary s;
    s.total_events = j.at("total_events").get<int>();
    for (const auto& a : j.at("per_agent")) {
        AgentEventStats st;
        st.agent = a.at("agent").get<int>();
        st.count = a.at("events").get<int>();
        st.min_interevent = opt_from(a, "min_interevent");
        st.mean_interevent = opt_from(a, "mean_interevent");
        s.per_agent.push_back(st);
    }
    s.min_interevent = opt_from(j, "min_interevent");
    s.mean_interevent = opt_from(j, "mean_interevent");
    s.final_disagreement = j.at("final_disagreement").get<double>();
    s.v_end = j.at("V_end").get<double>();
    s.time_to_tolerance = opt_from(j, "time_to_tolerance");
    s.zeno_flag = j.at("zeno_flag").get<bool>();
    s.zeno_diagnostic = j.value("zeno_diagnostic", std::string{});
    return s;
}

}  // namespace etcsim
