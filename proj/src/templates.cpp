#include "cta/templates.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace cta {

std::string channel_send_label(const ChannelSpec& spec) {
    return "send_" + spec.source + "_" + spec.dest;
}

std::string channel_recv_label(const ChannelSpec& spec) {
    return "recv_" + spec.source + "_" + spec.dest;
}

std::string task_run_label(const std::string& task) { return "run_" + task; }
std::string task_preempt_label(const std::string& task) {
    return "preempt_" + task;
}
std::string task_done_label(const std::string& task) { return "done_" + task; }
std::string task_release_label(const std::string& task) {
    return "release_" + task;
}
std::string task_progress_var(const std::string& task) {
    return "rem_" + task;
}

namespace {

Guard delay_window(const std::string& clock, int d_min, int d_max) {
    Guard g;
    g.atoms.push_back(GuardAtom{clock, Rel::ge, d_min});
    g.atoms.push_back(GuardAtom{clock, Rel::le, d_max});
    return g;
}

Guard upper_bound(const std::string& clock, int k) {
    Guard g;
    g.atoms.push_back(GuardAtom{clock, Rel::le, k});
    return g;
}

}  // namespace

TimedAutomaton gen_channel(const ChannelSpec& spec) {
    if (spec.capacity != 1 && spec.capacity != 2)
        throw TemplateError("unsupported channel capacity " +
                            std::to_string(spec.capacity) +
                            " (supported: 1, 2)");
    if (spec.d_min < 0 || spec.d_min > spec.d_max)
        throw TemplateError("invalid delay bounds [" +
                            std::to_string(spec.d_min) + "," +
                            std::to_string(spec.d_max) + "]");

    const std::string send = channel_send_label(spec);
    const std::string recv = channel_recv_label(spec);

    TimedAutomaton a;
    a.name = "chan_" + spec.source + "_" + spec.dest;
    a.initial = "empty";
    a.clocks.push_back("x1");

    a.locations.push_back(Location{"empty", {}});
    a.locations.push_back(Location{"slot1", upper_bound("x1", spec.d_max)});

    a.jumps.push_back(Jump{"empty",
                           {},
                           SyncAction::receive(send),
                           "slot1",
                           {ResetAction::clock("x1")}});
    a.jumps.push_back(Jump{"slot1",
                           delay_window("x1", spec.d_min, spec.d_max),
                           SyncAction::emit(recv),
                           "empty",
                           {}});

    if (spec.capacity == 1) {
        a.locations.push_back(Location{"overflow", {}});
        a.jumps.push_back(
            Jump{"slot1", {}, SyncAction::receive(send), "overflow", {}});
        return a;
    }

    a.clocks.push_back("x2");
    a.locations.push_back(Location{"slot2", upper_bound("x2", spec.d_max)});
    Guard both = upper_bound("x1", spec.d_max);
    both.atoms.push_back(GuardAtom{"x2", Rel::le, spec.d_max});
    a.locations.push_back(Location{"slot12", both});
    a.locations.push_back(Location{"overflow", {}});

    a.jumps.push_back(Jump{"slot1",
                           {},
                           SyncAction::receive(send),
                           "slot12",
                           {ResetAction::clock("x2")}});
    a.jumps.push_back(Jump{"slot2",
                           delay_window("x2", spec.d_min, spec.d_max),
                           SyncAction::emit(recv),
                           "empty",
                           {}});
    a.jumps.push_back(Jump{"slot2",
                           {},
                           SyncAction::receive(send),
                           "slot12",
                           {ResetAction::clock("x1")}});
    // Messages in flight together may be delivered in either order.
    a.jumps.push_back(Jump{"slot12",
                           delay_window("x1", spec.d_min, spec.d_max),
                           SyncAction::emit(recv),
                           "slot2",
                           {}});
    a.jumps.push_back(Jump{"slot12",
                           delay_window("x2", spec.d_min, spec.d_max),
                           SyncAction::emit(recv),
                           "slot1",
                           {}});
    a.jumps.push_back(
        Jump{"slot12", {}, SyncAction::receive(send), "overflow", {}});
    return a;
}

TimedAutomaton gen_task(const TaskSpec& spec) {
    if (spec.wcet < 1) throw TemplateError("wcet must be >= 1");
    if (spec.accuracy < 1) throw TemplateError("accuracy must be >= 1");
    if (spec.wcet % spec.accuracy != 0)
        throw TemplateError("accuracy " + std::to_string(spec.accuracy) +
                            " does not divide wcet " +
                            std::to_string(spec.wcet));

    const int steps = spec.wcet / spec.accuracy;
    const int quantum = spec.accuracy;
    const std::string rem = task_progress_var(spec.name);

    TimedAutomaton a;
    a.name = spec.name;
    a.initial = "ready";
    a.clocks.push_back("x");
    a.vars.push_back(VarDecl{rem, steps, 0, steps});

    a.locations.push_back(Location{"ready", {}});
    a.locations.push_back(Location{"running", upper_bound("x", quantum)});
    if (spec.preemptible) a.locations.push_back(Location{"preempted", {}});
    a.locations.push_back(Location{"done", {}});

    a.jumps.push_back(Jump{"ready",
                           {},
                           SyncAction::receive(task_run_label(spec.name)),
                           "running",
                           {ResetAction::clock("x")}});

    // One quantum of progress per full dwell of `quantum` time units.
    for (int k = steps; k >= 2; --k) {
        Guard g;
        g.atoms.push_back(GuardAtom{rem, Rel::eq, k});
        g.atoms.push_back(GuardAtom{"x", Rel::eq, quantum});
        a.jumps.push_back(Jump{"running",
                               g,
                               SyncAction::silent(),
                               "running",
                               {ResetAction::clock("x"),
                                ResetAction::assign(rem, k - 1)}});
    }

    // Completion fires at the final quantum boundary, so the total running
    // dwell is exactly wcet.
    Guard finish;
    finish.atoms.push_back(GuardAtom{rem, Rel::eq, 1});
    finish.atoms.push_back(GuardAtom{"x", Rel::eq, quantum});
    a.jumps.push_back(Jump{"running",
                           finish,
                           SyncAction::emit(task_done_label(spec.name)),
                           "done",
                           {ResetAction::clock("x"),
                            ResetAction::assign(rem, 0)}});

    if (spec.preemptible) {
        // Progress within the current quantum is rounded down on a context
        // switch; `rem` keeps the remaining portion.
        a.jumps.push_back(
            Jump{"running",
                 {},
                 SyncAction::receive(task_preempt_label(spec.name)),
                 "preempted",
                 {}});
        a.jumps.push_back(Jump{"preempted",
                               {},
                               SyncAction::receive(task_run_label(spec.name)),
                               "running",
                               {ResetAction::clock("x")}});
    }
    return a;
}

TimedAutomaton gen_event_agent(const EventAgentSpec& spec) {
    if (spec.ltba < 1) throw TemplateError("ltba must be >= 1");
    if (spec.ltba > std::numeric_limits<int>::max())
        throw TemplateError("ltba exceeds supported constant range");
    if (spec.label.empty()) throw TemplateError("empty event label");

    TimedAutomaton a;
    a.name = "agent_" + spec.label;
    a.initial = "q";
    a.clocks.push_back("t");
    a.locations.push_back(Location{"q", {}});
    Guard g;
    g.atoms.push_back(GuardAtom{"t", Rel::gt, static_cast<int>(spec.ltba)});
    a.jumps.push_back(Jump{"q",
                           g,
                           SyncAction::emit(spec.label),
                           "q",
                           {ResetAction::clock("t")}});
    return a;
}

namespace {

std::string ready_bit(const std::string& task) { return "rdy_" + task; }

// Priority chain: everything earlier in `order` is idle, `pick` is ready.
Guard grant_guard(const std::vector<std::string>& order, std::size_t pick) {
    Guard g;
    for (std::size_t i = 0; i < pick; ++i)
        g.atoms.push_back(GuardAtom{ready_bit(order[i]), Rel::eq, 0});
    g.atoms.push_back(GuardAtom{ready_bit(order[pick]), Rel::eq, 1});
    return g;
}

Guard all_idle_guard(const std::vector<std::string>& tasks) {
    Guard g;
    for (const auto& t : tasks)
        g.atoms.push_back(GuardAtom{ready_bit(t), Rel::eq, 0});
    return g;
}

}  // namespace

TimedAutomaton gen_dispatcher(const DispatcherSpec& spec) {
    if (spec.tasks.empty()) throw TemplateError("dispatcher without tasks");
    {
        std::set<std::string> names(spec.tasks.begin(), spec.tasks.end());
        if (names.size() != spec.tasks.size())
            throw TemplateError("duplicate task names");
    }
    const bool rr = spec.policy == DispatcherSpec::Policy::round_robin;
    if (rr && !spec.quantum.has_value())
        throw TemplateError("round-robin dispatcher requires a quantum");
    if (!rr && spec.quantum.has_value())
        throw TemplateError("quantum is only meaningful for round-robin");
    if (rr && *spec.quantum < 1)
        throw TemplateError("quantum must be >= 1");

    const auto& tasks = spec.tasks;
    const std::size_t n = tasks.size();

    TimedAutomaton a;
    a.name = "dispatcher";
    a.initial = "idle";
    a.clocks.push_back("dclk");
    for (const auto& t : tasks) a.vars.push_back(VarDecl{ready_bit(t), 0, 0, 1});

    a.locations.push_back(Location{"idle", {}});
    auto arb_name = [&](std::size_t after) {
        return rr ? "arb_" + tasks[after] : std::string("arb");
    };
    if (rr) {
        for (const auto& t : tasks)
            a.locations.push_back(Location{"arb_" + t, upper_bound("dclk", 0)});
    } else {
        a.locations.push_back(Location{"arb", upper_bound("dclk", 0)});
    }
    for (const auto& t : tasks) {
        Guard inv;
        if (rr) inv = upper_bound("dclk", *spec.quantum);
        a.locations.push_back(Location{"running_" + t, inv});
    }

    // Releases are tracked in every location; arbitration is entered
    // immediately when the CPU is free.
    for (std::size_t i = 0; i < n; ++i) {
        // Position the wheel so the released task is inspected first.
        const std::size_t wheel = rr ? (i + n - 1) % n : 0;
        a.jumps.push_back(Jump{"idle",
                               {},
                               SyncAction::receive(task_release_label(tasks[i])),
                               arb_name(wheel),
                               {ResetAction::assign(ready_bit(tasks[i]), 1),
                                ResetAction::clock("dclk")}});
        for (const auto& s : tasks)
            a.jumps.push_back(
                Jump{"running_" + s,
                     {},
                     SyncAction::receive(task_release_label(tasks[i])),
                     "running_" + s,
                     {ResetAction::assign(ready_bit(tasks[i]), 1)}});
        // A release landing on the arbitration instant joins that round.
        for (std::size_t p = 0; p < (rr ? n : 1); ++p)
            a.jumps.push_back(
                Jump{arb_name(p),
                     {},
                     SyncAction::receive(task_release_label(tasks[i])),
                     arb_name(p),
                     {ResetAction::assign(ready_bit(tasks[i]), 1)}});
    }

    // Grant jumps out of each arbitration point.
    const std::size_t arbs = rr ? n : 1;
    for (std::size_t p = 0; p < arbs; ++p) {
        std::vector<std::string> order;
        if (rr) {
            for (std::size_t k = 1; k <= n; ++k)
                order.push_back(tasks[(p + k) % n]);
        } else {
            order = tasks;
        }
        const std::string arb = arb_name(p);
        for (std::size_t pick = 0; pick < order.size(); ++pick) {
            std::vector<ResetAction> resets{
                ResetAction::assign(ready_bit(order[pick]), 0)};
            if (rr) resets.push_back(ResetAction::clock("dclk"));
            a.jumps.push_back(Jump{arb,
                                   grant_guard(order, pick),
                                   SyncAction::emit(task_run_label(order[pick])),
                                   "running_" + order[pick],
                                   std::move(resets)});
        }
        a.jumps.push_back(Jump{arb,
                               all_idle_guard(tasks),
                               SyncAction::silent(),
                               "idle",
                               {}});
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::string& t = tasks[i];
        a.jumps.push_back(Jump{"running_" + t,
                               {},
                               SyncAction::receive(task_done_label(t)),
                               arb_name(i),
                               {ResetAction::clock("dclk")}});
        if (rr) {
            Guard expiry;
            expiry.atoms.push_back(GuardAtom{"dclk", Rel::eq, *spec.quantum});
            a.jumps.push_back(Jump{"running_" + t,
                                   expiry,
                                   SyncAction::emit(task_preempt_label(t)),
                                   "arb_" + t,
                                   {ResetAction::assign(ready_bit(t), 1),
                                    ResetAction::clock("dclk")}});
        }
    }
    return a;
}

std::vector<ChannelDecl> default_channels(const TimedAutomaton& generated) {
    auto is_handshake = [](const std::string& label) {
        for (const char* prefix :
             {"send_", "recv_", "run_", "preempt_", "done_"})
            if (label.rfind(prefix, 0) == 0) return true;
        return false;
    };
    std::vector<ChannelDecl> out;
    std::set<std::string> seen;
    for (const auto& j : generated.jumps) {
        if (j.sync.dir == SyncAction::Dir::none) continue;
        if (!seen.insert(j.sync.label).second) continue;
        out.push_back(ChannelDecl{j.sync.label,
                                  is_handshake(j.sync.label)
                                      ? ChannelDecl::Kind::handshake
                                      : ChannelDecl::Kind::broadcast});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cta
