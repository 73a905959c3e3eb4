#include "cta/reduce.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "cta/edit.hpp"

namespace cta {

namespace {

long long checked_mul(long long a, long long b) {
    long long out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw ReduceError("integer overflow computing reduction bound");
    return out;
}

long long checked_add(long long a, long long b) {
    long long out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw ReduceError("integer overflow computing reduction bound");
    return out;
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

long long bound_single(long long period, const AperiodicSpec& spec) {
    if (period < 1) throw ReduceError("period must be >= 1");
    if (spec.deadline_interval < 1)
        throw ReduceError("deadline interval must be >= 1");
    return checked_add(spec.deadline_interval, period);
}

long long bound_multi(long long period,
                      const std::vector<AperiodicSpec>& specs) {
    if (period < 1) throw ReduceError("period must be >= 1");
    if (specs.empty()) throw ReduceError("no aperiodic specs");
    long long sum = 0;
    for (const auto& s : specs) {
        if (s.deadline_interval < 1)
            throw ReduceError("deadline interval must be >= 1");
        sum = checked_add(sum, ceil_div(s.deadline_interval, period));
    }
    return checked_add(checked_mul(period, sum), period);
}

long long bound_general(const std::vector<long long>& periods,
                        const std::vector<AperiodicSpec>& specs) {
    if (periods.empty()) throw ReduceError("no periods");
    long long l = 1;
    for (long long p : periods) {
        if (p < 1) throw ReduceError("period must be >= 1");
        l = checked_mul(l / std::gcd(l, p), p);
    }
    return bound_multi(l, specs);
}

namespace {

struct AgentShape {
    std::size_t automaton_index;
    Jump self_loop;
    std::string clock;
    long long ltba;
};

// The canonical agent: one location, one self-loop guarded by `t > K`
// emitting the event and resetting t.
AgentShape find_canonical_agent(const SystemModel& m, const std::string& label) {
    for (std::size_t i = 0; i < m.automata.size(); ++i) {
        const TimedAutomaton& a = m.automata[i];
        bool emits = false;
        for (const auto& j : a.jumps)
            if (j.sync == SyncAction::emit(label)) emits = true;
        if (!emits) continue;

        if (a.locations.size() != 1 || a.jumps.size() != 1 ||
            !a.locations.front().invariant.is_true())
            throw ReduceError("non-canonical event agent '" + a.name +
                              "' for label '" + label + "'");
        const Jump& j = a.jumps.front();
        if (j.source != j.target || j.guard.atoms.size() != 1)
            throw ReduceError("non-canonical event agent '" + a.name + "'");
        const GuardAtom& atom = j.guard.atoms.front();
        if (atom.rel != Rel::gt || !a.has_clock(atom.subject))
            throw ReduceError("non-canonical event agent '" + a.name + "'");
        if (j.resets.size() != 1 ||
            j.resets.front() != ResetAction::clock(atom.subject))
            throw ReduceError("non-canonical event agent '" + a.name + "'");
        return AgentShape{i, j, atom.subject, atom.constant};
    }
    throw ReduceError("no event agent emits label '" + label + "'");
}

}  // namespace

std::pair<SystemModel, ReductionReport> apply_reduction(const SystemModel& m) {
    if (m.periodic.empty())
        throw ReduceError("reduction requires at least one periodic spec");

    ReductionReport report;
    if (m.aperiodic.empty()) return {m, report};

    long long bound = 0;
    if (m.periodic.size() == 1 && m.aperiodic.size() == 1) {
        report.base_period = m.periodic.front().period;
        bound = bound_single(report.base_period, m.aperiodic.front());
    } else if (m.periodic.size() == 1) {
        report.base_period = m.periodic.front().period;
        bound = bound_multi(report.base_period, m.aperiodic);
    } else {
        std::vector<long long> periods;
        for (const auto& p : m.periodic) periods.push_back(p.period);
        long long l = 1;
        for (long long p : periods) {
            if (p < 1) throw ReduceError("period must be >= 1");
            l = checked_mul(l / std::gcd(l, p), p);
        }
        report.base_period = l;
        bound = bound_multi(l, m.aperiodic);
    }

    std::vector<AgentShape> agents;
    bool all_exceed = true;
    for (const auto& spec : m.aperiodic) {
        AgentShape agent = find_canonical_agent(m, spec.label);
        if (agent.ltba != spec.ltba)
            throw ReduceError("aperiodic spec for '" + spec.label +
                              "' disagrees with agent guard (" +
                              std::to_string(spec.ltba) + " vs " +
                              std::to_string(agent.ltba) + ")");
        if (!(agent.ltba > bound)) all_exceed = false;
        agents.push_back(std::move(agent));
    }

    report.applied = all_exceed;
    for (std::size_t i = 0; i < m.aperiodic.size(); ++i) {
        const auto& spec = m.aperiodic[i];
        report.events.push_back(ReductionEntry{
            spec.label, spec.ltba, bound,
            all_exceed ? bound : spec.ltba, all_exceed});
    }
    if (!all_exceed) return {m, report};

    if (bound > std::numeric_limits<int>::max())
        throw ReduceError("reduction bound exceeds supported constant range");

    SystemModel out = m;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const AgentShape& agent = agents[i];
        TimedAutomaton& a = out.automata[agent.automaton_index];
        Guard new_guard;
        new_guard.atoms.push_back(
            GuardAtom{agent.clock, Rel::gt, static_cast<int>(bound)});
        a = jump_edit(a, agent.self_loop, new_guard, agent.self_loop.resets,
                      agent.self_loop.sync, &out);
        out.aperiodic[i].ltba = bound;
    }
    return {out, report};
}

std::string report_text(const ReductionReport& report) {
    std::ostringstream oss;
    oss << "base_period=" << report.base_period << '\n';
    oss << "applied=" << (report.applied ? "true" : "false") << '\n';
    for (const auto& e : report.events)
        oss << "event=" << e.label << " old_ltba=" << e.old_ltba
            << " bound=" << e.bound << " new_ltba=" << e.new_ltba
            << " applied=" << (e.applied ? "true" : "false") << '\n';
    return oss.str();
}

}  // namespace cta
