#include "cta/checker.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "cta/dbm.hpp"

namespace cta {

std::string TraceStep::to_string() const {
    std::ostringstream oss;
    oss << "delay; ";
    switch (kind) {
        case Kind::silent: oss << "silent"; break;
        case Kind::handshake: oss << "handshake " << channel; break;
        case Kind::broadcast: oss << "broadcast " << channel; break;
    }
    for (const auto& p : participants)
        oss << ' ' << p.automaton << '[' << p.from << " -> " << p.to << ']';
    return oss.str();
}

std::string ExplorationStats::to_string() const {
    std::ostringstream oss;
    oss << "states_explored=" << states_explored << '\n'
        << "peak_waiting=" << peak_waiting << '\n'
        << "max_constant=" << max_constant << '\n';
    return oss.str();
}

namespace {

struct ClockAtomC {
    std::size_t clock;
    Rel rel;
    int k;
};

struct VarAtomC {
    std::size_t var;
    Rel rel;
    int k;
};

struct ResetC {
    bool is_clock;
    std::size_t index;
    int value;
};

struct JumpC {
    std::size_t source;
    std::size_t target;
    std::vector<ClockAtomC> clock_atoms;
    std::vector<VarAtomC> var_atoms;
    std::vector<ResetC> resets;
    int channel = -1;   // index into channels, -1 for silent
    SyncAction::Dir dir = SyncAction::Dir::none;
};

struct AutomatonC {
    std::string name;
    std::vector<std::string> location_names;
    std::size_t initial = 0;
    std::vector<std::vector<ClockAtomC>> invariants;   // per location
    std::vector<JumpC> jumps;
};

struct SystemC {
    std::vector<AutomatonC> automata;
    std::vector<ChannelDecl> channels;
    std::size_t clock_count = 0;
    std::vector<int> max_const;          // size clock_count + 1, [0] = 0
    std::vector<int> var_init;
    std::vector<std::string> var_names;

    std::size_t target_automaton = 0;
    std::size_t target_location = 0;
};

bool eval_var_atom(const VarAtomC& atom, const std::vector<int>& vars) {
    const int v = vars[atom.var];
    switch (atom.rel) {
        case Rel::lt: return v < atom.k;
        case Rel::le: return v <= atom.k;
        case Rel::eq: return v == atom.k;
        case Rel::ge: return v >= atom.k;
        case Rel::gt: return v > atom.k;
    }
    return false;
}

SystemC compile(const SystemModel& model, const ReachTarget& target) {
    {
        auto diags = validate_system(model);
        if (!diags.empty())
            throw std::invalid_argument("invalid model: " +
                                        diags.front().to_string());
    }

    SystemC sys;
    sys.channels = model.channels;

    std::unordered_map<std::string, int> channel_index;
    for (std::size_t i = 0; i < model.channels.size(); ++i)
        channel_index[model.channels[i].label] = static_cast<int>(i);

    std::unordered_map<std::string, std::size_t> var_index;
    for (const auto& a : model.automata) {
        for (const auto& v : a.vars) {
            var_index[v.name] = sys.var_init.size();
            sys.var_init.push_back(v.init);
            sys.var_names.push_back(v.name);
        }
    }

    // Clocks are automaton-local; give each a global index starting at 1.
    std::vector<std::unordered_map<std::string, std::size_t>> clock_index(
        model.automata.size());
    std::size_t next_clock = 1;
    for (std::size_t i = 0; i < model.automata.size(); ++i)
        for (const auto& c : model.automata[i].clocks)
            clock_index[i][c] = next_clock++;
    sys.clock_count = next_clock - 1;
    sys.max_const.assign(next_clock, 0);

    for (std::size_t i = 0; i < model.automata.size(); ++i) {
        const TimedAutomaton& a = model.automata[i];
        AutomatonC ac;
        ac.name = a.name;
        std::unordered_map<std::string, std::size_t> loc_index;
        for (std::size_t l = 0; l < a.locations.size(); ++l) {
            loc_index[a.locations[l].name] = l;
            ac.location_names.push_back(a.locations[l].name);
        }
        ac.initial = loc_index.at(a.initial);

        ac.invariants.resize(a.locations.size());
        for (std::size_t l = 0; l < a.locations.size(); ++l) {
            for (const auto& atom : a.locations[l].invariant.atoms) {
                const std::size_t clk = clock_index[i].at(atom.subject);
                ac.invariants[l].push_back(
                    ClockAtomC{clk, atom.rel, atom.constant});
                sys.max_const[clk] = std::max(sys.max_const[clk], atom.constant);
            }
        }

        for (const auto& j : a.jumps) {
            JumpC jc;
            jc.source = loc_index.at(j.source);
            jc.target = loc_index.at(j.target);
            for (const auto& atom : j.guard.atoms) {
                auto cit = clock_index[i].find(atom.subject);
                if (cit != clock_index[i].end()) {
                    jc.clock_atoms.push_back(
                        ClockAtomC{cit->second, atom.rel, atom.constant});
                    sys.max_const[cit->second] =
                        std::max(sys.max_const[cit->second], atom.constant);
                } else {
                    jc.var_atoms.push_back(VarAtomC{
                        var_index.at(atom.subject), atom.rel, atom.constant});
                }
            }
            for (const auto& r : j.resets) {
                if (r.kind == ResetAction::Kind::clock_reset)
                    jc.resets.push_back(
                        ResetC{true, clock_index[i].at(r.target), 0});
                else
                    jc.resets.push_back(
                        ResetC{false, var_index.at(r.target), r.value});
            }
            if (j.sync.dir != SyncAction::Dir::none) {
                jc.channel = channel_index.at(j.sync.label);
                jc.dir = j.sync.dir;
            }
            ac.jumps.push_back(std::move(jc));
        }
        sys.automata.push_back(std::move(ac));
    }

    const TimedAutomaton* ta = model.find_automaton(target.automaton);
    if (ta == nullptr)
        throw std::invalid_argument("unknown target automaton '" +
                                    target.automaton + "'");
    if (!ta->has_location(target.location))
        throw std::invalid_argument("unknown target location '" +
                                    target.location + "'");
    for (std::size_t i = 0; i < model.automata.size(); ++i)
        if (model.automata[i].name == target.automaton)
            sys.target_automaton = i;
    for (std::size_t l = 0; l < ta->locations.size(); ++l)
        if (ta->locations[l].name == target.location) sys.target_location = l;

    return sys;
}

// One chosen jump per participating automaton.
struct Move {
    TraceStep::Kind kind = TraceStep::Kind::silent;
    int channel = -1;
    // (automaton, jump) pairs; emitter first for synchronizations.
    std::vector<std::pair<std::size_t, std::size_t>> jumps;
    // Extra clock constraints from broadcast non-participation.
    std::vector<ClockAtomC> side_constraints;
};

struct StateC {
    std::vector<std::size_t> locs;
    std::vector<int> vars;
    Dbm zone;
    std::size_t parent = 0;
    bool has_parent = false;
    TraceStep step;   // action that produced this state
};

class Explorer {
public:
    Explorer(const SystemC& sys, const ReachOptions& options)
        : sys_(sys), options_(options) {}

    ReachResult run() {
        ReachResult result;
        result.stats.max_constant = 0;
        for (int m : sys_.max_const)
            result.stats.max_constant = std::max(result.stats.max_constant, m);

        StateC init;
        for (const auto& a : sys_.automata) init.locs.push_back(a.initial);
        init.vars = sys_.var_init;
        Dbm zone(sys_.clock_count);
        constrain_invariants(zone, init.locs);
        zone.elapse();
        constrain_invariants(zone, init.locs);
        zone.extrapolate(sys_.max_const);
        zone.canonicalize();
        init.zone = std::move(zone);

        std::size_t hit_state = 0;
        bool found = false;
        store(std::move(init));
        waiting_.push_back(0);
        if (is_target(states_[0])) {
            found = true;
            hit_state = 0;
        }

        while (!waiting_.empty() && !(found && !options_.exhaustive)) {
            result.stats.peak_waiting =
                std::max(result.stats.peak_waiting, waiting_.size());
            const std::size_t cur = waiting_.front();
            waiting_.pop_front();

            std::vector<Move> moves;
            enumerate_moves(states_[cur], moves);
            for (const Move& move : moves) {
                StateC next;
                if (!apply_move(states_[cur], move, next)) continue;
                if (!is_new(next)) continue;
                next.parent = cur;
                next.has_parent = true;
                next.step = describe(move);
                const std::size_t id = store(std::move(next));
                waiting_.push_back(id);
                if (!found && is_target(states_[id])) {
                    found = true;
                    hit_state = id;
                    if (!options_.exhaustive) break;
                }
            }
        }

        result.stats.states_explored = states_.size();
        result.stats.peak_waiting =
            std::max(result.stats.peak_waiting, waiting_.size());
        result.reachable = found;
        if (found) {
            std::vector<TraceStep> trace;
            for (std::size_t s = hit_state; states_[s].has_parent;
                 s = states_[s].parent)
                trace.push_back(states_[s].step);
            std::reverse(trace.begin(), trace.end());
            result.trace = std::move(trace);
        }
        return result;
    }

    // Replays `trace` against the transition relation; used by
    // verify_trace.
    bool replay(const std::vector<TraceStep>& trace) {
        StateC state;
        for (const auto& a : sys_.automata) state.locs.push_back(a.initial);
        state.vars = sys_.var_init;
        Dbm zone(sys_.clock_count);
        constrain_invariants(zone, state.locs);
        zone.elapse();
        constrain_invariants(zone, state.locs);
        zone.extrapolate(sys_.max_const);
        zone.canonicalize();
        state.zone = std::move(zone);

        for (const auto& step : trace) {
            Move move;
            move.channel = -1;
            move.kind = step.kind;
            for (const auto& p : step.participants) {
                bool matched = false;
                for (std::size_t i = 0; i < sys_.automata.size(); ++i) {
                    if (sys_.automata[i].name != p.automaton) continue;
                    if (p.jump_index >= sys_.automata[i].jumps.size())
                        return false;
                    move.jumps.emplace_back(i, p.jump_index);
                    const JumpC& j = sys_.automata[i].jumps[p.jump_index];
                    if (j.channel >= 0) move.channel = j.channel;
                    matched = true;
                }
                if (!matched) return false;
            }
            StateC next;
            if (!apply_move(state, move, next)) return false;
            state = std::move(next);
        }
        return state.locs[sys_.target_automaton] == sys_.target_location;
    }

private:
    bool is_target(const StateC& s) const {
        return s.locs[sys_.target_automaton] == sys_.target_location;
    }

    void constrain_invariants(Dbm& zone,
                              const std::vector<std::size_t>& locs) const {
        for (std::size_t i = 0; i < sys_.automata.size(); ++i)
            for (const auto& atom : sys_.automata[i].invariants[locs[i]])
                zone.constrain(atom.clock, atom.rel, atom.k);
    }

    bool jump_var_enabled(const JumpC& j, const std::vector<int>& vars) const {
        for (const auto& atom : j.var_atoms)
            if (!eval_var_atom(atom, vars)) return false;
        return true;
    }

    // Negation of one atom within the atom language; equality splits.
    static void negations(const ClockAtomC& atom,
                          std::vector<ClockAtomC>& out) {
        switch (atom.rel) {
            case Rel::lt: out.push_back({atom.clock, Rel::ge, atom.k}); break;
            case Rel::le: out.push_back({atom.clock, Rel::gt, atom.k}); break;
            case Rel::ge: out.push_back({atom.clock, Rel::lt, atom.k}); break;
            case Rel::gt: out.push_back({atom.clock, Rel::le, atom.k}); break;
            case Rel::eq:
                out.push_back({atom.clock, Rel::lt, atom.k});
                out.push_back({atom.clock, Rel::gt, atom.k});
                break;
        }
    }

    void enumerate_moves(const StateC& s, std::vector<Move>& out) const {
        // Silent jumps, in automaton then declaration order.
        for (std::size_t i = 0; i < sys_.automata.size(); ++i) {
            const AutomatonC& a = sys_.automata[i];
            for (std::size_t k = 0; k < a.jumps.size(); ++k) {
                const JumpC& j = a.jumps[k];
                if (j.dir != SyncAction::Dir::none) continue;
                if (j.source != s.locs[i]) continue;
                if (!jump_var_enabled(j, s.vars)) continue;
                Move m;
                m.kind = TraceStep::Kind::silent;
                m.jumps.emplace_back(i, k);
                out.push_back(std::move(m));
            }
        }

        for (std::size_t ch = 0; ch < sys_.channels.size(); ++ch) {
            if (sys_.channels[ch].kind == ChannelDecl::Kind::handshake)
                enumerate_handshakes(s, ch, out);
            else
                enumerate_broadcasts(s, ch, out);
        }
    }

    void enumerate_handshakes(const StateC& s, std::size_t ch,
                              std::vector<Move>& out) const {
        for (std::size_t i = 0; i < sys_.automata.size(); ++i) {
            const AutomatonC& ea = sys_.automata[i];
            for (std::size_t ek = 0; ek < ea.jumps.size(); ++ek) {
                const JumpC& ej = ea.jumps[ek];
                if (ej.channel != static_cast<int>(ch) ||
                    ej.dir != SyncAction::Dir::emit)
                    continue;
                if (ej.source != s.locs[i] || !jump_var_enabled(ej, s.vars))
                    continue;
                for (std::size_t j = 0; j < sys_.automata.size(); ++j) {
                    if (j == i) continue;
                    const AutomatonC& ra = sys_.automata[j];
                    for (std::size_t rk = 0; rk < ra.jumps.size(); ++rk) {
                        const JumpC& rj = ra.jumps[rk];
                        if (rj.channel != static_cast<int>(ch) ||
                            rj.dir != SyncAction::Dir::receive)
                            continue;
                        if (rj.source != s.locs[j] ||
                            !jump_var_enabled(rj, s.vars))
                            continue;
                        Move m;
                        m.kind = TraceStep::Kind::handshake;
                        m.channel = static_cast<int>(ch);
                        m.jumps.emplace_back(i, ek);
                        m.jumps.emplace_back(j, rk);
                        out.push_back(std::move(m));
                    }
                }
            }
        }
    }

    // Every automaton with an enabled receive participates. Enabledness of
    // a clock-guarded receive splits the zone, so alternatives are: take
    // one candidate receive, or sit in a cell of the complement of all
    // candidate guards.
    void enumerate_broadcasts(const StateC& s, std::size_t ch,
                              std::vector<Move>& out) const {
        struct Alternative {
            bool participates;
            std::size_t jump = 0;
            std::vector<ClockAtomC> constraints;
        };
        for (std::size_t i = 0; i < sys_.automata.size(); ++i) {
            const AutomatonC& ea = sys_.automata[i];
            for (std::size_t ek = 0; ek < ea.jumps.size(); ++ek) {
                const JumpC& ej = ea.jumps[ek];
                if (ej.channel != static_cast<int>(ch) ||
                    ej.dir != SyncAction::Dir::emit)
                    continue;
                if (ej.source != s.locs[i] || !jump_var_enabled(ej, s.vars))
                    continue;

                std::vector<std::size_t> receivers;
                std::vector<std::vector<Alternative>> alternatives;
                for (std::size_t j = 0; j < sys_.automata.size(); ++j) {
                    if (j == i) continue;
                    const AutomatonC& ra = sys_.automata[j];
                    std::vector<std::size_t> candidates;
                    for (std::size_t rk = 0; rk < ra.jumps.size(); ++rk) {
                        const JumpC& rj = ra.jumps[rk];
                        if (rj.channel == static_cast<int>(ch) &&
                            rj.dir == SyncAction::Dir::receive &&
                            rj.source == s.locs[j] &&
                            jump_var_enabled(rj, s.vars))
                            candidates.push_back(rk);
                    }
                    if (candidates.empty()) continue;

                    std::vector<Alternative> alts;
                    for (std::size_t rk : candidates)
                        alts.push_back(Alternative{
                            true, rk, ra.jumps[rk].clock_atoms});
                    // Complement cells: no candidate is enabled.
                    std::vector<std::vector<ClockAtomC>> cells{{}};
                    bool complement_possible = true;
                    for (std::size_t rk : candidates) {
                        const auto& atoms = ra.jumps[rk].clock_atoms;
                        if (atoms.empty()) {
                            complement_possible = false;
                            break;
                        }
                        std::vector<std::vector<ClockAtomC>> next;
                        for (const auto& cell : cells) {
                            for (const auto& atom : atoms) {
                                std::vector<ClockAtomC> negs;
                                negations(atom, negs);
                                for (const auto& neg : negs) {
                                    auto extended = cell;
                                    extended.push_back(neg);
                                    next.push_back(std::move(extended));
                                }
                            }
                        }
                        cells = std::move(next);
                    }
                    if (complement_possible)
                        for (auto& cell : cells)
                            alts.push_back(
                                Alternative{false, 0, std::move(cell)});
                    receivers.push_back(j);
                    alternatives.push_back(std::move(alts));
                }

                // Cartesian product over the receivers' alternatives.
                std::vector<std::size_t> pick(receivers.size(), 0);
                while (true) {
                    Move m;
                    m.kind = TraceStep::Kind::broadcast;
                    m.channel = static_cast<int>(ch);
                    m.jumps.emplace_back(i, ek);
                    for (std::size_t r = 0; r < receivers.size(); ++r) {
                        const Alternative& alt = alternatives[r][pick[r]];
                        if (alt.participates)
                            m.jumps.emplace_back(receivers[r], alt.jump);
                        else
                            m.side_constraints.insert(m.side_constraints.end(),
                                                      alt.constraints.begin(),
                                                      alt.constraints.end());
                    }
                    out.push_back(std::move(m));
                    std::size_t r = 0;
                    for (; r < pick.size(); ++r) {
                        if (++pick[r] < alternatives[r].size()) break;
                        pick[r] = 0;
                    }
                    if (r == pick.size()) break;
                }
            }
        }
    }

    bool apply_move(const StateC& s, const Move& move, StateC& next) const {
        Dbm zone = s.zone;
        for (const auto& [ai, jk] : move.jumps) {
            const JumpC& j = sys_.automata[ai].jumps[jk];
            if (j.source != s.locs[ai]) return false;
            if (!jump_var_enabled(j, s.vars)) return false;
            for (const auto& atom : j.clock_atoms)
                zone.constrain(atom.clock, atom.rel, atom.k);
        }
        for (const auto& atom : move.side_constraints)
            zone.constrain(atom.clock, atom.rel, atom.k);
        if (zone.empty()) return false;

        next.locs = s.locs;
        next.vars = s.vars;
        for (const auto& [ai, jk] : move.jumps) {
            const JumpC& j = sys_.automata[ai].jumps[jk];
            next.locs[ai] = j.target;
            for (const auto& r : j.resets) {
                if (r.is_clock)
                    zone.reset(r.index);
                else
                    next.vars[r.index] = r.value;
            }
        }
        constrain_invariants(zone, next.locs);
        if (zone.empty()) return false;
        zone.elapse();
        constrain_invariants(zone, next.locs);
        zone.extrapolate(sys_.max_const);
        zone.canonicalize();
        if (zone.empty()) return false;
        next.zone = std::move(zone);
        return true;
    }

    TraceStep describe(const Move& move) const {
        TraceStep step;
        step.kind = move.kind;
        if (move.channel >= 0)
            step.channel = sys_.channels[move.channel].label;
        for (const auto& [ai, jk] : move.jumps) {
            const AutomatonC& a = sys_.automata[ai];
            const JumpC& j = a.jumps[jk];
            step.participants.push_back(
                TraceParticipant{a.name, jk, a.location_names[j.source],
                                 a.location_names[j.target]});
        }
        return step;
    }

    std::size_t discrete_key(const StateC& s) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](std::size_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (std::size_t l : s.locs) mix(l);
        for (int v : s.vars) mix(static_cast<std::size_t>(v + (1 << 20)));
        return h;
    }

    bool same_discrete(const StateC& a, const StateC& b) const {
        return a.locs == b.locs && a.vars == b.vars;
    }

    // True if no stored state already covers `s`.
    bool is_new(const StateC& s) {
        auto& bucket = passed_[discrete_key(s)];
        for (std::size_t idx : bucket) {
            if (!same_discrete(states_[idx], s)) continue;
            if (options_.use_subsumption) {
                if (states_[idx].zone.includes(s.zone)) return false;
            } else {
                if (states_[idx].zone == s.zone) return false;
            }
        }
        return true;
    }

    std::size_t store(StateC s) {
        if (states_.size() >= options_.state_limit)
            throw std::runtime_error("state limit exceeded");
        const std::size_t id = states_.size();
        passed_[discrete_key(s)].push_back(id);
        states_.push_back(std::move(s));
        return id;
    }

    const SystemC& sys_;
    ReachOptions options_;
    std::vector<StateC> states_;
    std::deque<std::size_t> waiting_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> passed_;
};

}  // namespace

ReachResult reach(const SystemModel& model, const ReachTarget& target,
                  const ReachOptions& options) {
    SystemC sys = compile(model, target);
    Explorer explorer(sys, options);
    return explorer.run();
}

bool verify_trace(const SystemModel& model, const ReachTarget& target,
                  const std::vector<TraceStep>& trace) {
    SystemC sys = compile(model, target);
    Explorer explorer(sys, ReachOptions{});
    return explorer.replay(trace);
}

}  // namespace cta
