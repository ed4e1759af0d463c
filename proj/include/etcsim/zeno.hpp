#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace etcsim {

struct ZenoMonitorParams;

struct ZenoReport {
    bool flagged = false;
    double t_flag = 0.0;
    int agent = -1;  // 0-based; -1 when not flagged
    std::string diagnostic;
};

/// Online accumulation watchdog: flags an agent that logs more than K events
/// inside any sliding window of length w, or two consecutive events closer
/// than eps_z.
class ZenoMonitor {
public:
    ZenoMonitor(int n_agents, const ZenoMonitorParams& params);

    /// Feed one event; returns a report when the watchdog trips.
    std::optional<ZenoReport> observe(int agent, double t);

private:
    int max_events_ = 50;
    double window_ = 0.1;
    double eps_z_ = 1e-7;
    std::vector<std::deque<double>> recent_;
    std::vector<double> last_;
};

enum class EventSequenceClass { Zeno, NonZenoNoMiet, PositiveMiet };

std::string to_string(EventSequenceClass c);

struct SequenceClassification {
    EventSequenceClass kind = EventSequenceClass::PositiveMiet;
    double miet_estimate = 0.0;                   // smallest observed gap
    std::optional<double> accumulation_estimate;  // finite limit of event times (Zeno only)
};

/// Offline taxonomy of a gap sequence: accumulation (partial sums converge),
/// vanishing gaps without accumulation, or a positive uniform floor.
SequenceClassification classify_event_gaps(const std::vector<double>& gaps);

}  // namespace etcsim
