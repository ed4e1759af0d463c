#include "etcsim/zeno.hpp"

#include "etcsim/errors.hpp"
#include "etcsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace etcsim {

ZenoMonitor::ZenoMonitor(int n_agents, const ZenoMonitorParams& params)
    : max_events_(params.max_events_per_window),
      window_(params.window),
      eps_z_(params.eps_z),
      recent_(n_agents),
      last_(n_agents, -1.0) {}

std::optional<ZenoReport> ZenoMonitor::observe(int agent, double t) {
    auto& window = recent_[agent];
    window.push_back(t);
    while (!window.empty() && window.front() < t - window_) window.pop_front();

    ZenoReport report;
    report.t_flag = t;
    report.agent = agent;

    if (last_[agent] >= 0.0 && t - last_[agent] < eps_z_) {
        report.flagged = true;
        std::ostringstream os;
        os << "agent " << (agent + 1) << ": consecutive events " << (t - last_[agent])
           << " s apart (< eps_z = " << eps_z_ << "), accumulation near t = " << t;
        report.diagnostic = os.str();
        return report;
    }
    last_[agent] = t;

    if (static_cast<int>(window.size()) > max_events_) {
        report.flagged = true;
        std::ostringstream os;
        os << "agent " << (agent + 1) << ": " << window.size() << " events in the last "
           << window_ << " s (> " << max_events_ << "), accumulation near t = " << t;
        report.diagnostic = os.str();
        return report;
    }
    return std::nullopt;
}

std::string to_string(EventSequenceClass c) {
    switch (c) {
        case EventSequenceClass::Zeno: return "zeno";
        case EventSequenceClass::NonZenoNoMiet: return "non_zeno_no_miet";
        case EventSequenceClass::PositiveMiet: return "positive_miet";
    }
    return "?";
}

SequenceClassification classify_event_gaps(const std::vector<double>& gaps) {
    if (gaps.empty()) throw ConfigError("cannot classify an empty gap sequence");

    SequenceClassification out;
    out.miet_estimate = *std::min_element(gaps.begin(), gaps.end());

    const std::size_t m = gaps.size();
    if (m < 8) {
        // Too short to extrapolate a trend; report the observed floor.
        return out;
    }

    const double total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
    const double first_half = std::accumulate(gaps.begin(), gaps.begin() + m / 2, 0.0);
    const double tail_fraction = (total - first_half) / total;
    if (tail_fraction < 1e-3) {
        // The tail contributes nothing: partial sums converge.
        out.kind = EventSequenceClass::Zeno;
        out.accumulation_estimate = total;
        return out;
    }

    const double min_first = *std::min_element(gaps.begin(), gaps.begin() + m / 2);
    const double min_second = *std::min_element(gaps.begin() + m / 2, gaps.end());
    // Vanishing gaps keep halving along the sequence; a positive floor keeps
    // the minimum stable between halves.
    if (min_second >= 0.75 * min_first && out.miet_estimate > 0.0) {
        out.kind = EventSequenceClass::PositiveMiet;
    } else {
        out.kind = EventSequenceClass::NonZenoNoMiet;
    }
    return out;
}

}  // namespace etcsim
