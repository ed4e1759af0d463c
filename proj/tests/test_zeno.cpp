#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "etcsim/scenario.hpp"
#include "etcsim/zeno.hpp"

#include <cmath>
#include <vector>

using namespace etcsim;

namespace {

std::vector<double> quadratic_gaps(int count) {
    // t_{l+1} - t_l = 1/(l+1)^2: accumulation at pi^2/6.
    std::vector<double> gaps;
    for (int l = 0; l < count; ++l) gaps.push_back(1.0 / ((l + 1.0) * (l + 1.0)));
    return gaps;
}

std::vector<double> harmonic_gaps(int count) {
    std::vector<double> gaps;
    for (int l = 0; l < count; ++l) gaps.push_back(1.0 / (l + 1.0));
    return gaps;
}

std::vector<double> floored_gaps(int count, double c) {
    std::vector<double> gaps;
    for (int l = 0; l < count; ++l) gaps.push_back(c + 1.0 / (l + 1.0));
    return gaps;
}

}  // namespace

TEST_CASE("monitor: periodic spacing never flags") {
    ZenoMonitorParams params;
    ZenoMonitor monitor(1, params);
    double t = 0.0;
    for (int k = 0; k < 1000; ++k) {
        t += 0.05;
        CHECK_FALSE(monitor.observe(0, t).has_value());
    }
}

TEST_CASE("monitor: quadratic gaps flag before the accumulation point") {
    ZenoMonitorParams params;
    ZenoMonitor monitor(1, params);
    double t = 0.0;
    bool flagged = false;
    for (double gap : quadratic_gaps(20000)) {
        t += gap;
        if (auto report = monitor.observe(0, t)) {
            flagged = true;
            CHECK(report->t_flag < M_PI * M_PI / 6.0);
            CHECK(report->agent == 0);
            CHECK(!report->diagnostic.empty());
            break;
        }
    }
    CHECK(flagged);
}

TEST_CASE("monitor: positive floor stays quiet below eps_z") {
    ZenoMonitorParams params;
    params.eps_z = 1e-3;  // below the floor c = 0.0125 > window/K = 0.1/50 = 0.002
    ZenoMonitor monitor(1, params);
    double t = 0.0;
    for (double gap : floored_gaps(5000, 0.0125)) {
        t += gap;
        CHECK_FALSE(monitor.observe(0, t).has_value());
    }
}

TEST_CASE("classifier: the three canonical sequences") {
    const auto zeno = classify_event_gaps(quadratic_gaps(10000));
    CHECK(zeno.kind == EventSequenceClass::Zeno);
    REQUIRE(zeno.accumulation_estimate.has_value());
    CHECK(std::abs(*zeno.accumulation_estimate - M_PI * M_PI / 6.0) < 1e-3);

    const auto no_miet = classify_event_gaps(harmonic_gaps(10000));
    CHECK(no_miet.kind == EventSequenceClass::NonZenoNoMiet);

    const auto floored = classify_event_gaps(floored_gaps(10000, 0.01));
    CHECK(floored.kind == EventSequenceClass::PositiveMiet);
    CHECK(floored.miet_estimate >= 0.01);
}

TEST_CASE("classifier: short logs fall back to the observed floor") {
    const auto c = classify_event_gaps({0.5, 0.4, 0.6});
    CHECK(c.kind == EventSequenceClass::PositiveMiet);
    CHECK(c.miet_estimate == doctest::Approx(0.4));
}
