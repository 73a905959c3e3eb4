#include "cta/edit.hpp"

#include <algorithm>
#include <sstream>

namespace cta {

namespace {

void check_guard_payload(const TimedAutomaton& a, const Guard& g,
                         const SystemModel* system) {
    for (const auto& atom : g.atoms) {
        if (atom.constant < 0)
            throw EditError("negative constant in guard atom on '" +
                            atom.subject + "'");
        if (a.has_clock(atom.subject) || a.find_var(atom.subject) != nullptr)
            continue;
        if (system != nullptr &&
            system->find_var_anywhere(atom.subject) != nullptr)
            continue;
        throw EditError("unresolved reference '" + atom.subject +
                        "' in guard");
    }
}

void check_reset_payload(const TimedAutomaton& a,
                         const std::vector<ResetAction>& resets) {
    std::vector<std::string> seen;
    for (const auto& r : resets) {
        if (std::find(seen.begin(), seen.end(), r.target) != seen.end())
            throw EditError("multiple resets of '" + r.target + "'");
        seen.push_back(r.target);
        if (r.kind == ResetAction::Kind::clock_reset) {
            if (!a.has_clock(r.target))
                throw EditError("reset of unknown local clock '" + r.target +
                                "'");
            if (r.value != 0)
                throw EditError("clock reset must assign 0");
        } else {
            const VarDecl* v = a.find_var(r.target);
            if (v == nullptr)
                throw EditError("assignment to non-local variable '" +
                                r.target + "'");
            if (r.value < v->lo || r.value > v->hi)
                throw EditError("assignment outside domain: " + r.target +
                                " := " + std::to_string(r.value));
        }
    }
}

void check_sync_payload(const SyncAction& s, const SystemModel* system) {
    if (s.dir == SyncAction::Dir::none) {
        if (!s.label.empty())
            throw EditError("silent synchronizer carries a label");
        return;
    }
    if (s.label.empty())
        throw EditError("synchronizer without label");
    if (system != nullptr && system->find_channel(s.label) == nullptr)
        throw EditError("undeclared channel '" + s.label + "'");
}

}  // namespace

TimedAutomaton clock_add(const TimedAutomaton& a, const std::string& c) {
    if (c.empty()) throw EditError("empty clock name");
    if (a.has_clock(c))
        throw EditError("duplicate element: clock '" + c + "'");
    TimedAutomaton out = a;
    out.clocks.push_back(c);
    return out;
}

TimedAutomaton var_add(const TimedAutomaton& a, const VarDecl& v) {
    if (v.name.empty()) throw EditError("empty variable name");
    if (a.find_var(v.name) != nullptr)
        throw EditError("duplicate element: variable '" + v.name + "'");
    if (v.lo > v.init || v.init > v.hi)
        throw EditError("initial value of '" + v.name + "' outside domain");
    TimedAutomaton out = a;
    out.vars.push_back(v);
    return out;
}

TimedAutomaton vertex_add(const TimedAutomaton& a, const Location& q) {
    if (q.name.empty()) throw EditError("empty location name");
    if (a.has_location(q.name))
        throw EditError("duplicate element: location '" + q.name + "'");
    for (const auto& atom : q.invariant.atoms) {
        if (!a.has_clock(atom.subject))
            throw EditError("invariant references unknown local clock '" +
                            atom.subject + "'");
        if (atom.rel != Rel::lt && atom.rel != Rel::le)
            throw EditError("invariant atom on '" + atom.subject +
                            "' must use < or <=");
        if (atom.constant < 0)
            throw EditError("negative constant in invariant");
    }
    TimedAutomaton out = a;
    out.locations.push_back(q);
    return out;
}

TimedAutomaton jump_add(const TimedAutomaton& a, const Jump& j,
                        const SystemModel* system) {
    if (!a.has_location(j.source))
        throw EditError("unknown source location '" + j.source + "'");
    if (!a.has_location(j.target))
        throw EditError("unknown target location '" + j.target + "'");
    check_guard_payload(a, j.guard, system);
    check_reset_payload(a, j.resets);
    check_sync_payload(j.sync, system);
    if (std::find(a.jumps.begin(), a.jumps.end(), j) != a.jumps.end())
        throw EditError("duplicate element: jump " + j.source + " -> " +
                        j.target);
    TimedAutomaton out = a;
    out.jumps.push_back(j);
    return out;
}

TimedAutomaton jump_edit(const TimedAutomaton& a, const Jump& old_jump,
                         const Guard& new_guard,
                         const std::vector<ResetAction>& new_resets,
                         const SyncAction& new_sync,
                         const SystemModel* system) {
    auto it = std::find(a.jumps.begin(), a.jumps.end(), old_jump);
    if (it == a.jumps.end())
        throw EditError("edit target absent: jump " + old_jump.source +
                        " -> " + old_jump.target);
    check_guard_payload(a, new_guard, system);
    check_reset_payload(a, new_resets);
    check_sync_payload(new_sync, system);

    Jump replacement{old_jump.source, new_guard, new_sync, old_jump.target,
                     new_resets};
    if (replacement != old_jump &&
        std::find(a.jumps.begin(), a.jumps.end(), replacement) !=
            a.jumps.end())
        throw EditError("duplicate element: edited jump already present");

    TimedAutomaton out = a;
    out.jumps[static_cast<std::size_t>(it - a.jumps.begin())] =
        std::move(replacement);
    return out;
}

namespace {

TimedAutomaton& target_of(SystemModel& m, const std::string& name) {
    TimedAutomaton* a = m.find_automaton(name);
    if (a == nullptr)
        throw EditError("unknown target automaton '" + name + "'");
    return *a;
}

}  // namespace

SystemModel apply_action(const SystemModel& m, const EditAction& action) {
    SystemModel out = m;
    std::visit(
        [&](const auto& act) {
            using T = std::decay_t<decltype(act)>;
            TimedAutomaton& a = target_of(out, act.automaton);
            if constexpr (std::is_same_v<T, ClockAdd>) {
                a = clock_add(a, act.clock);
            } else if constexpr (std::is_same_v<T, VarAdd>) {
                // Variable names are global: reject clashes anywhere.
                if (out.find_var_anywhere(act.var.name) != nullptr)
                    throw EditError("duplicate element: variable '" +
                                    act.var.name + "' (global namespace)");
                a = var_add(a, act.var);
            } else if constexpr (std::is_same_v<T, VertexAdd>) {
                a = vertex_add(a, act.location);
            } else if constexpr (std::is_same_v<T, JumpAdd>) {
                a = jump_add(a, act.jump, &out);
            } else {
                a = jump_edit(a, act.old_jump, act.new_guard, act.new_resets,
                              act.new_sync, &out);
            }
        },
        action);
    return out;
}

SystemModel apply_sequence(const SystemModel& m, const EditSequence& seq) {
    SystemModel current = m;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            current = apply_action(current, seq[i]);
        } catch (const EditSequenceError&) {
            throw;
        } catch (const std::exception& e) {
            throw EditSequenceError(i, e.what());
        }
    }
    return current;
}

// ---------------------------------------------------------------------------
// Audit script
// ---------------------------------------------------------------------------

namespace {

std::string guard_script(const Guard& g) {
    if (g.is_true()) return "true";
    std::ostringstream oss;
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        if (i > 0) oss << " && ";
        oss << g.atoms[i].subject << ' ' << rel_text(g.atoms[i].rel) << ' '
            << g.atoms[i].constant;
    }
    return oss.str();
}

std::string resets_script(const std::vector<ResetAction>& resets) {
    if (resets.empty()) return "-";
    std::ostringstream oss;
    for (std::size_t i = 0; i < resets.size(); ++i) {
        if (i > 0) oss << ", ";
        oss << resets[i].target << " := "
            << (resets[i].kind == ResetAction::Kind::clock_reset
                    ? 0
                    : resets[i].value);
    }
    return oss.str();
}

std::string sync_script(const SyncAction& s) {
    switch (s.dir) {
        case SyncAction::Dir::emit: return s.label + "!";
        case SyncAction::Dir::receive: return s.label + "?";
        case SyncAction::Dir::none: break;
    }
    return "-";
}

}  // namespace

std::string script_line(const EditAction& action) {
    std::ostringstream oss;
    std::visit(
        [&](const auto& act) {
            using T = std::decay_t<decltype(act)>;
            if constexpr (std::is_same_v<T, ClockAdd>) {
                oss << "clock_add " << act.automaton << ' ' << act.clock;
            } else if constexpr (std::is_same_v<T, VarAdd>) {
                oss << "var_add " << act.automaton << ' ' << act.var.name
                    << " init=" << act.var.init << " domain=["
                    << act.var.lo << ',' << act.var.hi << ']';
            } else if constexpr (std::is_same_v<T, VertexAdd>) {
                oss << "vertex_add " << act.automaton << ' '
                    << act.location.name << " inv=\""
                    << guard_script(act.location.invariant) << '"';
            } else if constexpr (std::is_same_v<T, JumpAdd>) {
                oss << "jump_add " << act.automaton << ' ' << act.jump.source
                    << " -> " << act.jump.target << " guard=\""
                    << guard_script(act.jump.guard) << "\" sync=\""
                    << sync_script(act.jump.sync) << "\" resets=\""
                    << resets_script(act.jump.resets) << '"';
            } else {
                oss << "jump_edit " << act.automaton << ' '
                    << act.old_jump.source << " -> " << act.old_jump.target
                    << " old{guard=\"" << guard_script(act.old_jump.guard)
                    << "\" sync=\"" << sync_script(act.old_jump.sync)
                    << "\" resets=\"" << resets_script(act.old_jump.resets)
                    << "\"} new{guard=\"" << guard_script(act.new_guard)
                    << "\" sync=\"" << sync_script(act.new_sync)
                    << "\" resets=\"" << resets_script(act.new_resets)
                    << "\"}";
            }
        },
        action);
    return oss.str();
}

std::string to_script(const EditSequence& seq) {
    std::ostringstream oss;
    for (const auto& action : seq) oss << script_line(action) << '\n';
    return oss.str();
}

}  // namespace cta
