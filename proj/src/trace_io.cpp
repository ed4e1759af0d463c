#include "etcsim/trace_io.hpp"

#include "etcsim/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace etcsim {

namespace {

// 17 significant digits: doubles survive the text round trip exactly.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

}  // namespace

std::string trace_to_csv(const Trace& trace) {
    std::ostringstream os;
    os << "t";
    for (const auto& label : trace.state_labels) os << "," << label;
    os << ",V,disagreement\n";
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        os << fmt(trace.t[k]);
        const Eigen::VectorXd& s = trace.state[k];
        for (int i = 0; i < s.size(); ++i) os << "," << fmt(s(i));
        os << "," << fmt(trace.lyapunov[k]) << "," << fmt(trace.disagreement[k]) << "\n";
    }
    return os.str();
}

std::string events_to_csv(const Trace& trace) {
    std::ostringstream os;
    os << "agent,t,kind\n";
    for (const auto& ev : trace.events) {
        os << (ev.agent + 1) << "," << fmt(ev.t) << "," << ev.kind << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Trace trace_from_csv(const std::string& trace_csv, const std::string& events_csv) {
    Trace trace;
    std::stringstream ts(trace_csv);
    std::string line;
    if (!std::getline(ts, line)) throw IoError("empty trace CSV");
    const auto header = split(line, ',');
    if (header.size() < 3 || header.front() != "t") throw IoError("malformed trace CSV header");
    trace.state_labels.assign(header.begin() + 1, header.end() - 2);

    while (std::getline(ts, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) throw IoError("malformed trace CSV row");
        trace.t.push_back(std::stod(fields[0]));
        Eigen::VectorXd s(static_cast<Eigen::Index>(trace.state_labels.size()));
        for (std::size_t i = 0; i < trace.state_labels.size(); ++i) {
            s(static_cast<Eigen::Index>(i)) = std::stod(fields[1 + i]);
        }
        trace.state.push_back(std::move(s));
        trace.lyapunov.push_back(std::stod(fields[fields.size() - 2]));
        trace.disagreement.push_back(std::stod(fields[fields.size() - 1]));
        trace.grid_sample.push_back(1);
    }

    std::stringstream es(events_csv);
    if (!std::getline(es, line) || split(line, ',').size() != 3) {
        throw IoError("malformed events CSV header");
    }
    int max_agent = 0;
    while (std::getline(es, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 3) throw IoError("malformed events CSV row");
        TraceEvent ev;
        ev.agent = std::stoi(fields[0]) - 1;
        ev.t = std::stod(fields[1]);
        ev.kind = fields[2];
        max_agent = std::max(max_agent, ev.agent + 1);
        trace.events.push_back(std::move(ev));
    }

    // Column labels of the form prefix_i identify the agent count; events may
    // exceed it only on malformed input.
    int labelled_agents = 0;
    for (const auto& label : trace.state_labels) {
        const auto us = label.find('_');
        if (us != std::string::npos) {
            labelled_agents = std::max(labelled_agents, std::stoi(label.substr(us + 1)));
        }
    }
    trace.n_agents = std::max(labelled_agents, max_agent);
    return trace;
}

}  // namespace etcsim
