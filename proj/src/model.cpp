#include "cta/model.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cta {

const char* rel_text(Rel r) {
    switch (r) {
        case Rel::lt: return "<";
        case Rel::le: return "<=";
        case Rel::eq: return "==";
        case Rel::ge: return ">=";
        case Rel::gt: return ">";
    }
    return "?";
}

bool parse_rel(std::string_view text, Rel& out) {
    if (text == "<")  { out = Rel::lt; return true; }
    if (text == "<=") { out = Rel::le; return true; }
    if (text == "==") { out = Rel::eq; return true; }
    if (text == ">=") { out = Rel::ge; return true; }
    if (text == ">")  { out = Rel::gt; return true; }
    return false;
}

ResetAction ResetAction::clock(std::string name) {
    return ResetAction{Kind::clock_reset, std::move(name), 0};
}

ResetAction ResetAction::assign(std::string name, int value) {
    return ResetAction{Kind::var_assign, std::move(name), value};
}

SyncAction SyncAction::silent() { return SyncAction{}; }

SyncAction SyncAction::emit(std::string label) {
    return SyncAction{Dir::emit, std::move(label)};
}

SyncAction SyncAction::receive(std::string label) {
    return SyncAction{Dir::receive, std::move(label)};
}

const Location* TimedAutomaton::find_location(std::string_view name) const {
    for (const auto& l : locations)
        if (l.name == name) return &l;
    return nullptr;
}

bool TimedAutomaton::has_location(std::string_view name) const {
    return find_location(name) != nullptr;
}

bool TimedAutomaton::has_clock(std::string_view name) const {
    return std::find(clocks.begin(), clocks.end(), name) != clocks.end();
}

const VarDecl* TimedAutomaton::find_var(std::string_view name) const {
    for (const auto& v : vars)
        if (v.name == name) return &v;
    return nullptr;
}

const TimedAutomaton* SystemModel::find_automaton(std::string_view name) const {
    for (const auto& a : automata)
        if (a.name == name) return &a;
    return nullptr;
}

TimedAutomaton* SystemModel::find_automaton(std::string_view name) {
    for (auto& a : automata)
        if (a.name == name) return &a;
    return nullptr;
}

const ChannelDecl* SystemModel::find_channel(std::string_view label) const {
    for (const auto& c : channels)
        if (c.label == label) return &c;
    return nullptr;
}

const VarDecl* SystemModel::find_var_anywhere(std::string_view name) const {
    for (const auto& a : automata)
        if (const VarDecl* v = a.find_var(name)) return v;
    return nullptr;
}

std::string Diagnostic::to_string() const {
    std::ostringstream oss;
    if (!automaton.empty()) oss << automaton << ": ";
    if (!element.empty()) oss << element << ": ";
    oss << message;
    return oss.str();
}

// ---------------------------------------------------------------------------
// validate_system
// ---------------------------------------------------------------------------

namespace {

std::string jump_label(const Jump& j) {
    return "jump " + j.source + " -> " + j.target;
}

// Guard atoms in jumps may read a local clock or any declared variable.
void check_guard(const SystemModel& m, const TimedAutomaton& a,
                 const std::string& element, const Guard& g,
                 std::vector<Diagnostic>& out) {
    for (const auto& atom : g.atoms) {
        if (atom.constant < 0)
            out.push_back({a.name, element,
                           "negative constant in comparison with '" +
                               atom.subject + "'"});
        if (!a.has_clock(atom.subject) &&
            m.find_var_anywhere(atom.subject) == nullptr)
            out.push_back({a.name, element,
                           "unresolved reference '" + atom.subject + "'"});
    }
}

void check_invariant(const TimedAutomaton& a, const Location& l,
                     std::vector<Diagnostic>& out) {
    const std::string element = "location " + l.name;
    for (const auto& atom : l.invariant.atoms) {
        if (!a.has_clock(atom.subject)) {
            out.push_back({a.name, element,
                           "invariant references unknown local clock '" +
                               atom.subject + "'"});
            continue;
        }
        if (atom.rel != Rel::lt && atom.rel != Rel::le)
            out.push_back({a.name, element,
                           "invariant atom on '" + atom.subject +
                               "' must use < or <="});
        if (atom.constant < 0)
            out.push_back({a.name, element,
                           "negative constant in invariant on '" +
                               atom.subject + "'"});
    }
}

void check_resets(const TimedAutomaton& a, const Jump& j,
                  std::vector<Diagnostic>& out) {
    const std::string element = jump_label(j);
    std::set<std::string> seen;
    for (const auto& r : j.resets) {
        if (!seen.insert(r.target).second)
            out.push_back({a.name, element,
                           "multiple resets of '" + r.target + "'"});
        if (r.kind == ResetAction::Kind::clock_reset) {
            if (!a.has_clock(r.target))
                out.push_back({a.name, element,
                               "reset of unknown local clock '" + r.target +
                                   "'"});
            if (r.value != 0)
                out.push_back({a.name, element,
                               "clock reset must assign 0"});
        } else {
            const VarDecl* v = a.find_var(r.target);
            if (v == nullptr) {
                out.push_back({a.name, element,
                               "assignment to non-local variable '" +
                                   r.target + "'"});
            } else if (r.value < v->lo || r.value > v->hi) {
                out.push_back({a.name, element,
                               "assignment outside domain: " + r.target +
                                   " := " + std::to_string(r.value) +
                                   " with domain [" + std::to_string(v->lo) +
                                   "," + std::to_string(v->hi) + "]"});
            }
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate_system(const SystemModel& m) {
    std::vector<Diagnostic> out;

    std::set<std::string> automaton_names;
    for (const auto& a : m.automata)
        if (!automaton_names.insert(a.name).second)
            out.push_back({"", "automaton " + a.name, "duplicate automaton name"});

    std::set<std::string> channel_labels;
    for (const auto& c : m.channels) {
        if (c.label.empty())
            out.push_back({"", "channel", "empty channel label"});
        if (!channel_labels.insert(c.label).second)
            out.push_back({"", "channel " + c.label, "duplicate channel label"});
    }

    // Variable names live in one global namespace (cross-automaton reads).
    std::unordered_map<std::string, std::string> var_owner;
    for (const auto& a : m.automata) {
        for (const auto& v : a.vars) {
            if (v.name.empty()) {
                out.push_back({a.name, "variable", "empty variable name"});
                continue;
            }
            auto [it, fresh] = var_owner.emplace(v.name, a.name);
            if (!fresh)
                out.push_back({a.name, "variable " + v.name,
                               "variable name already declared in automaton " +
                                   it->second});
            if (v.lo > v.init || v.init > v.hi)
                out.push_back({a.name, "variable " + v.name,
                               "initial value " + std::to_string(v.init) +
                                   " outside domain [" + std::to_string(v.lo) +
                                   "," + std::to_string(v.hi) + "]"});
        }
    }

    for (const auto& a : m.automata) {
        std::set<std::string> clock_names;
        for (const auto& c : a.clocks) {
            if (c.empty())
                out.push_back({a.name, "clock", "empty clock name"});
            if (!clock_names.insert(c).second)
                out.push_back({a.name, "clock " + c, "duplicate clock name"});
            if (var_owner.count(c))
                out.push_back({a.name, "clock " + c,
                               "clock name shadows variable '" + c +
                                   "' declared in automaton " + var_owner[c]});
        }

        std::set<std::string> location_names;
        for (const auto& l : a.locations) {
            if (l.name.empty())
                out.push_back({a.name, "location", "empty location name"});
            if (!location_names.insert(l.name).second)
                out.push_back({a.name, "location " + l.name,
                               "duplicate location name"});
            check_invariant(a, l, out);
        }

        if (!a.has_location(a.initial))
            out.push_back({a.name, "initial",
                           "initial location '" + a.initial + "' not declared"});

        std::set<Jump> seen_jumps;
        for (const auto& j : a.jumps) {
            const std::string element = jump_label(j);
            if (!a.has_location(j.source))
                out.push_back({a.name, element,
                               "unknown source location '" + j.source + "'"});
            if (!a.has_location(j.target))
                out.push_back({a.name, element,
                               "unknown target location '" + j.target + "'"});
            check_guard(m, a, element, j.guard, out);
            check_resets(a, j, out);
            if (j.sync.dir != SyncAction::Dir::none) {
                if (j.sync.label.empty())
                    out.push_back({a.name, element, "synchronizer without label"});
                else if (m.find_channel(j.sync.label) == nullptr)
                    out.push_back({a.name, element,
                                   "undeclared channel '" + j.sync.label + "'"});
            } else if (!j.sync.label.empty()) {
                out.push_back({a.name, element,
                               "silent jump carries a label"});
            }
            if (!seen_jumps.insert(j).second)
                out.push_back({a.name, element, "duplicate jump"});
        }
    }

    for (const auto& d : m.deadlines) {
        const std::string element =
            "deadline (" + d.q + ", " + d.q_prime + ", " +
            std::to_string(d.bound) + ")";
        const TimedAutomaton* a = m.find_automaton(d.automaton);
        if (a == nullptr) {
            out.push_back({d.automaton, element, "unknown automaton"});
            continue;
        }
        if (!a->has_location(d.q))
            out.push_back({d.automaton, element,
                           "unknown location '" + d.q + "'"});
        if (!a->has_location(d.q_prime))
            out.push_back({d.automaton, element,
                           "unknown location '" + d.q_prime + "'"});
        if (d.q == d.q_prime)
            out.push_back({d.automaton, element,
                           "locations of a deadline requirement must differ"});
        if (d.bound < 1)
            out.push_back({d.automaton, element, "bound must be >= 1"});
    }

    for (const auto& s : m.aperiodic) {
        const std::string element = "aperiodic " + s.label;
        if (m.find_channel(s.label) == nullptr)
            out.push_back({"", element, "undeclared channel '" + s.label + "'"});
        if (s.ltba < 1)
            out.push_back({"", element, "ltba must be >= 1"});
        if (s.deadline_interval < 1)
            out.push_back({"", element, "deadline interval must be >= 1"});
    }

    for (const auto& s : m.periodic) {
        if (s.period < 1)
            out.push_back({"", "periodic " + s.task, "period must be >= 1"});
    }

    return out;
}

// ---------------------------------------------------------------------------
// Graph queries
// ---------------------------------------------------------------------------

std::vector<Jump> incoming_jumps(const TimedAutomaton& a, std::string_view q) {
    if (!a.has_location(q))
        throw std::invalid_argument("no such location: " + std::string(q) +
                                    " in automaton " + a.name);
    std::vector<Jump> result;
    for (const auto& j : a.jumps)
        if (j.target == q) result.push_back(j);
    return result;
}

std::vector<std::string> reachable_locations(const TimedAutomaton& a,
                                             std::string_view q) {
    if (!a.has_location(q))
        throw std::invalid_argument("no such location: " + std::string(q) +
                                    " in automaton " + a.name);
    std::vector<std::string> order;
    std::unordered_set<std::string> seen;
    std::deque<std::string> frontier;
    frontier.emplace_back(q);
    seen.insert(std::string(q));
    while (!frontier.empty()) {
        std::string cur = std::move(frontier.front());
        frontier.pop_front();
        order.push_back(cur);
        for (const auto& j : a.jumps) {
            if (j.source != cur) continue;
            if (seen.insert(j.target).second) frontier.push_back(j.target);
        }
    }
    return order;
}

// ---------------------------------------------------------------------------
// Order-insensitive comparison
// ---------------------------------------------------------------------------

TimedAutomaton normalized(TimedAutomaton a) {
    std::sort(a.locations.begin(), a.locations.end());
    std::sort(a.clocks.begin(), a.clocks.end());
    std::sort(a.vars.begin(), a.vars.end());
    std::sort(a.jumps.begin(), a.jumps.end());
    for (auto& j : a.jumps) std::sort(j.resets.begin(), j.resets.end());
    return a;
}

SystemModel normalized(SystemModel m) {
    for (auto& a : m.automata) a = normalized(std::move(a));
    std::sort(m.automata.begin(), m.automata.end(),
              [](const TimedAutomaton& x, const TimedAutomaton& y) {
                  return x.name < y.name;
              });
    std::sort(m.channels.begin(), m.channels.end());
    std::sort(m.deadlines.begin(), m.deadlines.end());
    std::sort(m.aperiodic.begin(), m.aperiodic.end());
    std::sort(m.periodic.begin(), m.periodic.end());
    return m;
}

bool equivalent(const TimedAutomaton& a, const TimedAutomaton& b) {
    return normalized(a) == normalized(b);
}

bool equivalent(const SystemModel& a, const SystemModel& b) {
    return normalized(a) == normalized(b);
}

}  // namespace cta
