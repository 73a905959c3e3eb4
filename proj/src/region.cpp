// region.cpp — explicit region-graph enumeration; the brute-force oracle
// the zone engine is cross-checked against. Deliberately self-contained:
// no zone machinery, its own pairing of synchronizers.
#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cta/checker.hpp"

namespace cta {

namespace {

constexpr std::size_t kMaxAutomata = 3;
constexpr std::size_t kMaxClocks = 3;
constexpr std::size_t kMaxLocationsPer = 6;
constexpr int kMaxConstant = 5;
constexpr long long kMaxVarSpace = 4096;

// Clock valuation class: integer parts (top = above the max constant) plus
// the ordering of fractional parts. Clocks above the max constant leave
// the fractional partition.
struct Region {
    std::vector<int> ipart;   // 0..M, or M+1 meaning "above M"
    std::vector<int> cls;     // fractional class per clock, -1 when above M
    bool zero_frac = false;   // class 0 sits exactly on the integer

    auto operator<=>(const Region&) const = default;
};

struct RState {
    std::vector<int> locs;
    std::vector<int> vars;
    Region region;

    auto operator<=>(const RState&) const = default;
};

int class_count(const Region& r) {
    int top = -1;
    for (int c : r.cls) top = std::max(top, c);
    return top + 1;
}

bool clock_is_integer(const Region& r, std::size_t clock) {
    return r.cls[clock] == 0 && r.zero_frac;
}

bool clock_above(const Region& r, int max_const, std::size_t clock) {
    return r.ipart[clock] > max_const;
}

bool eval_clock_atom(const Region& r, int max_const, std::size_t clock,
                     Rel rel, int k) {
    if (clock_above(r, max_const, clock)) {
        // The valuation exceeds every constant in the system.
        return rel == Rel::gt || rel == Rel::ge;
    }
    const int iv = r.ipart[clock];
    const bool integer = clock_is_integer(r, clock);
    switch (rel) {
        case Rel::lt: return iv < k;
        case Rel::le: return iv < k || (iv == k && integer);
        case Rel::eq: return iv == k && integer;
        case Rel::ge: return iv >= k;
        case Rel::gt: return iv > k || (iv == k && !integer);
    }
    return false;
}

// Delay successor: the next region in time, or nothing when stable.
bool delay_successor(const Region& r, int max_const, Region& out) {
    const int k = class_count(r);
    if (k == 0) return false;   // every clock is above the max constant
    out = r;
    if (r.zero_frac) {
        out.zero_frac = false;
        return true;
    }
    // The largest fractional class reaches the next integer.
    const int top = k - 1;
    bool any_survivor = false;
    for (std::size_t c = 0; c < r.cls.size(); ++c) {
        if (r.cls[c] != top) continue;
        out.ipart[c] = r.ipart[c] + 1;
        if (out.ipart[c] > max_const) {
            out.ipart[c] = max_const + 1;
            out.cls[c] = -1;
        } else {
            any_survivor = true;
        }
    }
    if (any_survivor) {
        // Survivors become the new zero-fraction class 0.
        for (std::size_t c = 0; c < out.cls.size(); ++c) {
            if (r.cls[c] == top && out.cls[c] != -1)
                out.cls[c] = 0;
            else if (out.cls[c] >= 0)
                out.cls[c] += 1;
        }
        out.zero_frac = true;
    } else {
        out.zero_frac = false;
    }
    return true;
}

void reset_clock_region(Region& r, std::size_t clock) {
    const int old_class = r.cls[clock];
    r.ipart[clock] = 0;
    r.cls[clock] = -2;   // detached while renumbering
    if (old_class >= 0) {
        bool old_class_empty = true;
        for (int c : r.cls)
            if (c == old_class) old_class_empty = false;
        if (old_class_empty) {
            for (auto& c : r.cls)
                if (c > old_class) c -= 1;
            if (old_class == 0) r.zero_frac = false;
        }
    }
    if (class_count(r) > 0 && r.zero_frac) {
        r.cls[clock] = 0;   // join the existing integer class
    } else {
        for (auto& c : r.cls)
            if (c >= 0) c += 1;
        r.cls[clock] = 0;
        r.zero_frac = true;
    }
}

struct OracleModel {
    const SystemModel* model = nullptr;
    std::map<std::pair<std::string, std::string>, std::size_t> clock_ids;
    std::map<std::string, std::size_t> var_ids;
    std::vector<int> var_init;
    int max_const = 0;
};

void check_limits(const SystemModel& m, const OracleModel& om) {
    if (m.automata.size() > kMaxAutomata)
        throw RegionLimitError("oracle limit: more than 3 automata");
    if (om.clock_ids.size() > kMaxClocks)
        throw RegionLimitError("oracle limit: more than 3 clocks");
    for (const auto& a : m.automata)
        if (a.locations.size() > kMaxLocationsPer)
            throw RegionLimitError("oracle limit: automaton '" + a.name +
                                   "' has more than 6 locations");
    if (om.max_const > kMaxConstant)
        throw RegionLimitError("oracle limit: clock constant above 5");
    long long var_space = 1;
    for (const auto& a : m.automata)
        for (const auto& v : a.vars) {
            var_space *= static_cast<long long>(v.hi) - v.lo + 1;
            if (var_space > kMaxVarSpace)
                throw RegionLimitError("oracle limit: variable space too large");
        }
}

OracleModel build(const SystemModel& m) {
    auto diags = validate_system(m);
    if (!diags.empty())
        throw std::invalid_argument("invalid model: " +
                                    diags.front().to_string());
    OracleModel om;
    om.model = &m;
    for (const auto& a : m.automata) {
        for (const auto& c : a.clocks)
            om.clock_ids[{a.name, c}] = om.clock_ids.size();
        for (const auto& v : a.vars) {
            om.var_ids[v.name] = om.var_init.size();
            om.var_init.push_back(v.init);
        }
    }
    for (const auto& a : m.automata) {
        for (const auto& l : a.locations)
            for (const auto& atom : l.invariant.atoms)
                om.max_const = std::max(om.max_const, atom.constant);
        for (const auto& j : a.jumps)
            for (const auto& atom : j.guard.atoms)
                if (a.has_clock(atom.subject))
                    om.max_const = std::max(om.max_const, atom.constant);
    }
    check_limits(m, om);
    return om;
}

class RegionExplorer {
public:
    RegionExplorer(const OracleModel& om, const ReachTarget& target)
        : om_(om), m_(*om.model) {
        const TimedAutomaton* ta = m_.find_automaton(target.automaton);
        if (ta == nullptr)
            throw std::invalid_argument("unknown target automaton '" +
                                        target.automaton + "'");
        if (!ta->has_location(target.location))
            throw std::invalid_argument("unknown target location '" +
                                        target.location + "'");
        for (std::size_t i = 0; i < m_.automata.size(); ++i)
            if (m_.automata[i].name == target.automaton) target_automaton_ = i;
        target_location_ = loc_index(target_automaton_, target.location);
    }

    Verdict run() {
        RState init;
        for (std::size_t i = 0; i < m_.automata.size(); ++i)
            init.locs.push_back(loc_index(i, m_.automata[i].initial));
        init.vars = om_.var_init;
        init.region.ipart.assign(om_.clock_ids.size(), 0);
        init.region.cls.assign(om_.clock_ids.size(), 0);
        init.region.zero_frac = !om_.clock_ids.empty();

        std::set<RState> seen;
        std::deque<RState> frontier;
        seen.insert(init);
        frontier.push_back(init);
        if (is_target(init)) return Verdict::reachable;

        while (!frontier.empty()) {
            RState cur = std::move(frontier.front());
            frontier.pop_front();

            std::vector<RState> next;
            successors(cur, next);
            for (auto& n : next) {
                if (!seen.insert(n).second) continue;
                if (is_target(n)) return Verdict::reachable;
                frontier.push_back(std::move(n));
            }
        }
        return Verdict::unreachable;
    }

private:
    bool is_target(const RState& s) const {
        return s.locs[target_automaton_] == static_cast<int>(target_location_);
    }

    std::size_t loc_index(std::size_t automaton, std::string_view name) const {
        const auto& locs = m_.automata[automaton].locations;
        for (std::size_t l = 0; l < locs.size(); ++l)
            if (locs[l].name == name) return l;
        throw std::invalid_argument("unknown location");
    }

    bool eval_atom(const RState& s, std::size_t automaton,
                   const GuardAtom& atom) const {
        const TimedAutomaton& a = m_.automata[automaton];
        if (a.has_clock(atom.subject)) {
            const std::size_t clk = om_.clock_ids.at({a.name, atom.subject});
            return eval_clock_atom(s.region, om_.max_const, clk, atom.rel,
                                   atom.constant);
        }
        const int v = s.vars[om_.var_ids.at(atom.subject)];
        switch (atom.rel) {
            case Rel::lt: return v < atom.constant;
            case Rel::le: return v <= atom.constant;
            case Rel::eq: return v == atom.constant;
            case Rel::ge: return v >= atom.constant;
            case Rel::gt: return v > atom.constant;
        }
        return false;
    }

    bool guard_holds(const RState& s, std::size_t automaton,
                     const Guard& g) const {
        for (const auto& atom : g.atoms)
            if (!eval_atom(s, automaton, atom)) return false;
        return true;
    }

    bool invariants_hold(const RState& s) const {
        for (std::size_t i = 0; i < m_.automata.size(); ++i) {
            const auto& loc = m_.automata[i].locations[s.locs[i]];
            if (!guard_holds(s, i, loc.invariant)) return false;
        }
        return true;
    }

    void apply_jump(RState& s, std::size_t automaton, const Jump& j) const {
        const TimedAutomaton& a = m_.automata[automaton];
        s.locs[automaton] = static_cast<int>(loc_index(automaton, j.target));
        for (const auto& r : j.resets) {
            if (r.kind == ResetAction::Kind::clock_reset)
                reset_clock_region(s.region,
                                   om_.clock_ids.at({a.name, r.target}));
            else
                s.vars[om_.var_ids.at(r.target)] = r.value;
        }
    }

    void successors(const RState& s, std::vector<RState>& out) const {
        // Delay.
        Region delayed;
        if (delay_successor(s.region, om_.max_const, delayed)) {
            RState n = s;
            n.region = delayed;
            if (invariants_hold(n)) out.push_back(std::move(n));
        }

        // Silent jumps.
        for (std::size_t i = 0; i < m_.automata.size(); ++i) {
            for (const auto& j : m_.automata[i].jumps) {
                if (!j.sync.is_silent()) continue;
                if (j.source !=
                    m_.automata[i].locations[s.locs[i]].name)
                    continue;
                if (!guard_holds(s, i, j.guard)) continue;
                RState n = s;
                apply_jump(n, i, j);
                if (invariants_hold(n)) out.push_back(std::move(n));
            }
        }

        for (const auto& ch : m_.channels) {
            if (ch.kind == ChannelDecl::Kind::handshake)
                handshakes(s, ch.label, out);
            else
                broadcasts(s, ch.label, out);
        }
    }

    void handshakes(const RState& s, const std::string& label,
                    std::vector<RState>& out) const {
        for (std::size_t i = 0; i < m_.automata.size(); ++i) {
            for (const auto& ej : m_.automata[i].jumps) {
                if (ej.sync != SyncAction::emit(label)) continue;
                if (ej.source != m_.automata[i].locations[s.locs[i]].name)
                    continue;
                if (!guard_holds(s, i, ej.guard)) continue;
                for (std::size_t r = 0; r < m_.automata.size(); ++r) {
                    if (r == i) continue;
                    for (const auto& rj : m_.automata[r].jumps) {
                        if (rj.sync != SyncAction::receive(label)) continue;
                        if (rj.source !=
                            m_.automata[r].locations[s.locs[r]].name)
                            continue;
                        if (!guard_holds(s, r, rj.guard)) continue;
                        RState n = s;
                        apply_jump(n, i, ej);
                        apply_jump(n, r, rj);
                        if (invariants_hold(n)) out.push_back(std::move(n));
                    }
                }
            }
        }
    }

    // Regions decide every guard, so receiver participation is crisp here:
    // an automaton with at least one enabled receive takes one of them.
    void broadcasts(const RState& s, const std::string& label,
                    std::vector<RState>& out) const {
        for (std::size_t i = 0; i < m_.automata.size(); ++i) {
            for (const auto& ej : m_.automata[i].jumps) {
                if (ej.sync != SyncAction::emit(label)) continue;
                if (ej.source != m_.automata[i].locations[s.locs[i]].name)
                    continue;
                if (!guard_holds(s, i, ej.guard)) continue;

                std::vector<std::size_t> receivers;
                std::vector<std::vector<const Jump*>> choices;
                for (std::size_t r = 0; r < m_.automata.size(); ++r) {
                    if (r == i) continue;
                    std::vector<const Jump*> enabled;
                    for (const auto& rj : m_.automata[r].jumps) {
                        if (rj.sync != SyncAction::receive(label)) continue;
                        if (rj.source !=
                            m_.automata[r].locations[s.locs[r]].name)
                            continue;
                        if (!guard_holds(s, r, rj.guard)) continue;
                        enabled.push_back(&rj);
                    }
                    if (!enabled.empty()) {
                        receivers.push_back(r);
                        choices.push_back(std::move(enabled));
                    }
                }

                std::vector<std::size_t> pick(receivers.size(), 0);
                while (true) {
                    RState n = s;
                    apply_jump(n, i, ej);
                    for (std::size_t r = 0; r < receivers.size(); ++r)
                        apply_jump(n, receivers[r], *choices[r][pick[r]]);
                    if (invariants_hold(n)) out.push_back(std::move(n));
                    std::size_t r = 0;
                    for (; r < pick.size(); ++r) {
                        if (++pick[r] < choices[r].size()) break;
                        pick[r] = 0;
                    }
                    if (r == pick.size()) break;
                }
            }
        }
    }

    const OracleModel& om_;
    const SystemModel& m_;
    std::size_t target_automaton_ = 0;
    std::size_t target_location_ = 0;
};

}  // namespace

Verdict region_reach(const SystemModel& model, const ReachTarget& target) {
    OracleModel om = build(model);
    RegionExplorer explorer(om, target);
    return explorer.run();
}

}  // namespace cta
