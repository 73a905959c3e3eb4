#include <doctest.h>

#include <random>

#include "cta/checker.hpp"
#include "cta/format.hpp"
#include "cta/reduce.hpp"
#include "cta/templates.hpp"
#include "support/sched_fixture.hpp"

using namespace cta;
using namespace cta::testing;

TEST_CASE("single-event bound") {
    CHECK(bound_single(50, AperiodicSpec{"e", 500, 20}) == 70);
    CHECK(bound_single(1, AperiodicSpec{"e", 3, 1}) == 2);
    // ltba 60 does not exceed the bound 70, so reduction must not apply.
    SystemModel m;
    m.channels.push_back(ChannelDecl{"e", ChannelDecl::Kind::broadcast});
    m.automata.push_back(gen_event_agent(EventAgentSpec{"e", 60}));
    m.aperiodic.push_back(AperiodicSpec{"e", 60, 20});
    m.periodic.push_back(PeriodicSpec{"f", 50});
    auto [reduced, report] = apply_reduction(m);
    CHECK(reduced == m);
    CHECK_FALSE(report.applied);
    CHECK(report.events[0].bound == 70);
}

TEST_CASE("shared bound over several events") {
    CHECK(bound_multi(10, {AperiodicSpec{"a", 99, 15},
                           AperiodicSpec{"b", 99, 5}}) == 40);
    CHECK(bound_multi(50, {AperiodicSpec{"a", 999, 20}}) == 100);
    CHECK(bound_multi(10, {AperiodicSpec{"a", 99, 10}}) == 20);
}

TEST_CASE("lcm-based bound over several periods") {
    CHECK(bound_general({10, 15}, {AperiodicSpec{"a", 999, 25}}) == 60);
    std::vector<AperiodicSpec> specs{AperiodicSpec{"a", 99, 15},
                                     AperiodicSpec{"b", 99, 5}};
    CHECK(bound_general({10}, specs) == bound_multi(10, specs));
    CHECK(bound_general({7, 13}, {AperiodicSpec{"a", 999, 1}}) == 182);

    CHECK_THROWS_AS(bound_general({1'000'000'007, 998'244'353, 754'974'721,
                                   167'772'161, 469'762'049},
                                  {AperiodicSpec{"a", 2, 1}}),
                    ReduceError);
}

namespace {

SystemModel agent_system(long long ltba, long long t_p, long long period) {
    SystemModel m;
    m.channels.push_back(ChannelDecl{"ev", ChannelDecl::Kind::broadcast});
    m.automata.push_back(gen_event_agent(EventAgentSpec{"ev", ltba}));
    m.aperiodic.push_back(AperiodicSpec{"ev", ltba, t_p});
    m.periodic.push_back(PeriodicSpec{"f", period});
    return m;
}

}  // namespace

TEST_CASE("reduction rewrites the agent guard to the bound") {
    SystemModel m = agent_system(500, 20, 50);
    auto [reduced, report] = apply_reduction(m);

    CHECK(report.applied);
    CHECK(report.base_period == 50);
    REQUIRE(report.events.size() == 1);
    CHECK(report.events[0].old_ltba == 500);
    CHECK(report.events[0].bound == 70);
    CHECK(report.events[0].new_ltba == 70);
    CHECK(report.events[0].applied);

    const TimedAutomaton& agent = reduced.automata[0];
    CHECK(agent.jumps[0].guard.atoms[0].constant == 70);
    CHECK(reduced.aperiodic[0].ltba == 70);

    // Frame: only the guard constant changed.
    SystemModel frame = reduced;
    frame.automata[0].jumps[0].guard.atoms[0].constant = 500;
    frame.aperiodic[0].ltba = 500;
    CHECK(frame == m);

    // Idempotence: the second pass sees ltba == bound and leaves it alone.
    auto [twice, second] = apply_reduction(reduced);
    CHECK(twice == reduced);
    CHECK_FALSE(second.applied);
}

TEST_CASE("the all-events condition is all-or-nothing") {
    SystemModel m;
    m.channels.push_back(ChannelDecl{"e1", ChannelDecl::Kind::broadcast});
    m.channels.push_back(ChannelDecl{"e2", ChannelDecl::Kind::broadcast});
    m.automata.push_back(gen_event_agent(EventAgentSpec{"e1", 100}));
    m.automata.push_back(gen_event_agent(EventAgentSpec{"e2", 35}));
    m.aperiodic.push_back(AperiodicSpec{"e1", 100, 15});
    m.aperiodic.push_back(AperiodicSpec{"e2", 35, 5});
    m.periodic.push_back(PeriodicSpec{"f", 10});

    auto [reduced, report] = apply_reduction(m);
    CHECK(reduced == m);
    CHECK_FALSE(report.applied);
    REQUIRE(report.events.size() == 2);
    CHECK(report.events[0].bound == 40);
    CHECK_FALSE(report.events[0].applied);
    CHECK_FALSE(report.events[1].applied);
}

TEST_CASE("two periods use their least common multiple") {
    SystemModel m = agent_system(500, 25, 10);
    m.periodic.push_back(PeriodicSpec{"g", 15});
    auto [reduced, report] = apply_reduction(m);
    CHECK(report.base_period == 30);
    CHECK(reduced.automata[0].jumps[0].guard.atoms[0].constant == 60);
}

TEST_CASE("non-canonical agents and missing specs are errors") {
    SystemModel m = agent_system(500, 20, 50);
    m.automata[0].locations.push_back(Location{"extra", {}});
    CHECK_THROWS_WITH_AS(apply_reduction(m),
                         doctest::Contains("non-canonical"), ReduceError);

    SystemModel no_agent;
    no_agent.channels.push_back(
        ChannelDecl{"ev", ChannelDecl::Kind::broadcast});
    no_agent.aperiodic.push_back(AperiodicSpec{"ev", 9, 2});
    no_agent.periodic.push_back(PeriodicSpec{"f", 3});
    CHECK_THROWS_AS(apply_reduction(no_agent), ReduceError);

    SystemModel no_periodic = agent_system(500, 20, 50);
    no_periodic.periodic.clear();
    CHECK_THROWS_AS(apply_reduction(no_periodic), ReduceError);
}

TEST_CASE("reduction shrinks the model's maximum constant") {
    SystemModel m = agent_system(500, 20, 50);
    auto [reduced, report] = apply_reduction(m);
    int before = 0, after = 0;
    for (const auto& j : m.automata[0].jumps)
        for (const auto& atom : j.guard.atoms) before = atom.constant;
    for (const auto& j : reduced.automata[0].jumps)
        for (const auto& atom : j.guard.atoms) after = atom.constant;
    CHECK(after <= before);
    CHECK(after == 70);
}

TEST_CASE("report text uses stable keys") {
    auto [reduced, report] = apply_reduction(agent_system(500, 20, 50));
    const std::string text = report_text(report);
    CHECK(text.find("base_period=50") != std::string::npos);
    CHECK(text.find("event=ev old_ltba=500 bound=70 new_ltba=70 "
                    "applied=true") != std::string::npos);
}

TEST_CASE("reduction preserves the deadline-violation verdict") {
    std::mt19937 rng(2024);
    int applied_count = 0;
    for (int i = 0; i < 5; ++i) {
        SchedParams params;
        const long long T = 4 + static_cast<long long>(rng() % 4);
        params.periodic.push_back(
            SchedTaskParams{"t0", T, 1 + static_cast<int>(rng() % 3)});
        const long long t_p = 2 + static_cast<long long>(rng() % (2 * T - 1));
        SchedEventParams ev;
        ev.name = "h0";
        ev.deadline_interval = t_p;
        ev.wcet = 1 + static_cast<int>(rng() % 2);
        ev.ltba = T + t_p + 1 + static_cast<long long>(rng() % 20);
        params.events.push_back(ev);

        VerificationModel vm = build_annotated_sched(params);
        auto [reduced, report] = apply_reduction(vm.model);
        if (report.applied) ++applied_count;

        for (const auto& [automaton, location] : vm.violation_targets) {
            const bool before =
                reach(vm.model, ReachTarget{automaton, location}).reachable;
            const bool after =
                reach(reduced, ReachTarget{automaton, location}).reachable;
            CHECK(before == after);
        }
    }
    CHECK(applied_count > 0);
}
