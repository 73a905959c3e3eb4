#include "cta/observers.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cta {

std::string monitor_clock_name(const DeadlineRequirement& r) {
    return "dl_clk_" + r.q;
}

std::string monitor_var_name(const DeadlineRequirement& r) {
    return "dl_var_" + r.automaton + "_" + r.q;
}

std::string violation_location_name(const DeadlineRequirement& r) {
    return "dl_vio_" + r.q;
}

namespace {

// The annotation is only meaningful when no run re-enters q before reaching
// q'. Checked syntactically: a cycle through q that avoids q' is an error.
void check_no_reentry(const TimedAutomaton& a, const DeadlineRequirement& r) {
    std::unordered_set<std::string> seen;
    std::deque<std::string> frontier;
    std::unordered_map<std::string, std::string> parent;
    for (const auto& j : a.jumps) {
        if (j.source != r.q || j.target == r.q_prime) continue;
        if (j.target == r.q) {
            throw ObserverError("requirement (" + r.q + ", " + r.q_prime +
                                ") violated by cycle: " + r.q + " -> " + r.q);
        }
        if (seen.insert(j.target).second) {
            parent[j.target] = r.q;
            frontier.push_back(j.target);
        }
    }
    while (!frontier.empty()) {
        std::string cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& j : a.jumps) {
            if (j.source != cur || j.target == r.q_prime) continue;
            if (j.target == r.q) {
                std::string cycle = r.q;
                for (std::string at = cur; at != r.q; at = parent[at])
                    cycle = at + " -> " + cycle;
                throw ObserverError("requirement (" + r.q + ", " + r.q_prime +
                                    ") violated by cycle: " + r.q + " -> " +
                                    cycle);
            }
            if (seen.insert(j.target).second) {
                parent[j.target] = cur;
                frontier.push_back(j.target);
            }
        }
    }
}

void check_requirement(const SystemModel& model, const DeadlineRequirement& r) {
    const TimedAutomaton* a = model.find_automaton(r.automaton);
    if (a == nullptr)
        throw ObserverError("requirement names unknown automaton '" +
                            r.automaton + "'");
    if (!a->has_location(r.q))
        throw ObserverError("requirement on undeclared location '" + r.q +
                            "'");
    if (!a->has_location(r.q_prime))
        throw ObserverError("requirement on undeclared location '" +
                            r.q_prime + "'");
    if (r.q == r.q_prime)
        throw ObserverError("requirement locations must differ");
    if (r.bound < 1)
        throw ObserverError("requirement bound must be >= 1");
    check_no_reentry(*a, r);
}

}  // namespace

EditSequence emit_deadline_edits(const SystemModel& model,
                                 const std::vector<DeadlineRequirement>& reqs) {
    {
        auto diags = validate_system(model);
        if (!diags.empty())
            throw ObserverError("model does not validate: " +
                                diags.front().to_string());
    }

    EditSequence seq;
    // Working copy so that requirements sharing edited jumps chain
    // correctly: each jump_edit's old tuple is the current payload.
    SystemModel work = model;

    for (const auto& r : reqs) {
        check_requirement(model, r);

        const std::string clk = monitor_clock_name(r);
        const std::string var = monitor_var_name(r);
        const std::string vio = violation_location_name(r);

        seq.push_back(ClockAdd{r.automaton, clk});
        // Initialized to 1: no deadline pending until q is entered.
        seq.push_back(VarAdd{r.automaton, VarDecl{var, 1, 0, 1}});
        seq.push_back(VertexAdd{r.automaton, Location{vio, Guard{}}});
        work = apply_action(work, seq[seq.size() - 3]);
        work = apply_action(work, seq[seq.size() - 2]);
        work = apply_action(work, seq[seq.size() - 1]);

        const TimedAutomaton& wa = *work.find_automaton(r.automaton);

        // Arm the monitor on every entry of q.
        for (const Jump& j : incoming_jumps(wa, r.q)) {
            std::vector<ResetAction> resets = j.resets;
            resets.push_back(ResetAction::clock(clk));
            resets.push_back(ResetAction::assign(var, 0));
            JumpEdit edit{r.automaton, j, j.guard, std::move(resets), j.sync};
            work = apply_action(work, edit);
            seq.push_back(std::move(edit));
        }

        // Disarm on every entry of q'.
        for (const Jump& j : incoming_jumps(*work.find_automaton(r.automaton),
                                            r.q_prime)) {
            std::vector<ResetAction> resets = j.resets;
            resets.push_back(ResetAction::assign(var, 1));
            JumpEdit edit{r.automaton, j, j.guard, std::move(resets), j.sync};
            work = apply_action(work, edit);
            seq.push_back(std::move(edit));
        }

        // Escape to the violation location once the deadline has expired.
        // Reachability is read off the original model, so violation
        // locations of earlier requirements never pick up escapes.
        const TimedAutomaton& original = *model.find_automaton(r.automaton);
        Guard escape;
        escape.atoms.push_back(GuardAtom{var, Rel::eq, 0});
        escape.atoms.push_back(
            GuardAtom{clk, Rel::gt, static_cast<int>(r.bound)});
        for (const std::string& q : reachable_locations(original, r.q)) {
            if (q == vio) continue;
            JumpAdd add{r.automaton,
                        Jump{q, escape, SyncAction::silent(), vio, {}}};
            work = apply_action(work, add);
            seq.push_back(std::move(add));
        }
    }
    return seq;
}

VerificationModel gen_verification_model(
    const SystemModel& model, const std::vector<DeadlineRequirement>& reqs) {
    VerificationModel out;
    out.model = apply_sequence(model, emit_deadline_edits(model, reqs));
    for (const auto& r : reqs)
        out.violation_targets.emplace_back(r.automaton,
                                           violation_location_name(r));
    return out;
}

TimedAutomaton gen_window_observer(const ArrivalWindowSpec& spec) {
    if (spec.t_min > spec.t_max)
        throw ObserverError("window lower bound " + std::to_string(spec.t_min) +
                            " exceeds upper bound " +
                            std::to_string(spec.t_max));
    if (spec.t_min < 0)
        throw ObserverError("window bounds must be non-negative");

    const int lo = static_cast<int>(spec.t_min);
    const int hi = static_cast<int>(spec.t_max);

    TimedAutomaton a;
    a.name = "window_" + spec.label;
    a.locations = {Location{"waiting", {}}, Location{"armed", {}},
                   Location{"violated", {}}};
    a.initial = "waiting";
    a.clocks = {"w"};

    // First message arms the window.
    a.jumps.push_back(Jump{"waiting",
                           {},
                           SyncAction::receive(spec.label),
                           "armed",
                           {ResetAction::clock("w")}});
    // On-time arrival; both boundaries are accepted.
    Guard on_time;
    on_time.atoms.push_back(GuardAtom{"w", Rel::ge, lo});
    on_time.atoms.push_back(GuardAtom{"w", Rel::le, hi});
    a.jumps.push_back(Jump{"armed",
                           on_time,
                           SyncAction::receive(spec.label),
                           "armed",
                           {ResetAction::clock("w")}});
    // Early arrival.
    if (lo > 0) {
        Guard early;
        early.atoms.push_back(GuardAtom{"w", Rel::lt, lo});
        a.jumps.push_back(Jump{
            "armed", early, SyncAction::receive(spec.label), "violated", {}});
    }
    // Overdue: silence strictly past the upper bound.
    Guard overdue;
    overdue.atoms.push_back(GuardAtom{"w", Rel::gt, hi});
    a.jumps.push_back(
        Jump{"armed", overdue, SyncAction::silent(), "violated", {}});
    // `violated` is a sink.
    return a;
}

SystemModel add_window_observer(const SystemModel& model,
                                const ArrivalWindowSpec& spec) {
    const ChannelDecl* ch = model.find_channel(spec.label);
    if (ch == nullptr)
        throw ObserverError("undeclared channel '" + spec.label + "'");
    if (ch->kind != ChannelDecl::Kind::broadcast)
        throw ObserverError("channel '" + spec.label +
                            "' must be broadcast for window observation");
    TimedAutomaton obs = gen_window_observer(spec);
    if (model.find_automaton(obs.name) != nullptr)
        throw ObserverError("automaton '" + obs.name + "' already present");
    SystemModel out = model;
    out.automata.push_back(std::move(obs));
    return out;
}

}  // namespace cta
