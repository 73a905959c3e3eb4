#include "support/random_models.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

namespace cta::testing {

namespace {

int pick(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Rel random_rel(std::mt19937& rng) {
    switch (pick(rng, 0, 4)) {
        case 0: return Rel::lt;
        case 1: return Rel::le;
        case 2: return Rel::eq;
        case 3: return Rel::ge;
        default: return Rel::gt;
    }
}

}  // namespace

SystemModel random_oracle_model(std::mt19937& rng) {
    SystemModel m;

    const int n_automata = chance(rng, 0.25) ? 3 : pick(rng, 1, 2);
    int clock_budget = pick(rng, 0, 3);

    const int n_channels = pick(rng, 0, 2);
    for (int c = 0; c < n_channels; ++c)
        m.channels.push_back(
            ChannelDecl{"ch" + std::to_string(c),
                        chance(rng, 0.5) ? ChannelDecl::Kind::handshake
                                         : ChannelDecl::Kind::broadcast});

    struct VarRef {
        std::string name;
        int lo, hi;
    };
    std::vector<VarRef> all_vars;

    for (int i = 0; i < n_automata; ++i) {
        TimedAutomaton a;
        a.name = "A" + std::to_string(i);
        const int n_locs = pick(rng, 2, 4);
        for (int l = 0; l < n_locs; ++l)
            a.locations.push_back(Location{"l" + std::to_string(l), {}});
        a.initial = "l0";

        const int n_clocks = clock_budget > 0 ? pick(rng, 0, 1) : 0;
        clock_budget -= n_clocks;
        for (int c = 0; c < n_clocks; ++c)
            a.clocks.push_back("c" + std::to_string(c));

        if (chance(rng, 0.4)) {
            VarDecl v;
            v.name = "v" + std::to_string(i);
            v.lo = 0;
            v.hi = pick(rng, 1, 2);
            v.init = pick(rng, v.lo, v.hi);
            all_vars.push_back(VarRef{v.name, v.lo, v.hi});
            a.vars.push_back(std::move(v));
        }

        for (auto& l : a.locations)
            if (!a.clocks.empty() && chance(rng, 0.3))
                l.invariant.atoms.push_back(GuardAtom{
                    a.clocks[0], chance(rng, 0.5) ? Rel::le : Rel::lt,
                    pick(rng, 1, 5)});

        m.automata.push_back(std::move(a));
    }

    for (auto& a : m.automata) {
        const int n_jumps = pick(rng, 2, 5);
        for (int j = 0; j < n_jumps; ++j) {
            Jump jump;
            jump.source =
                a.locations[pick(rng, 0, static_cast<int>(a.locations.size()) -
                                             1)]
                    .name;
            jump.target =
                a.locations[pick(rng, 0, static_cast<int>(a.locations.size()) -
                                             1)]
                    .name;
            if (!a.clocks.empty() && chance(rng, 0.6))
                jump.guard.atoms.push_back(
                    GuardAtom{a.clocks[0], random_rel(rng), pick(rng, 0, 5)});
            if (!all_vars.empty() && chance(rng, 0.3)) {
                const VarRef& v = all_vars[pick(
                    rng, 0, static_cast<int>(all_vars.size()) - 1)];
                jump.guard.atoms.push_back(
                    GuardAtom{v.name, random_rel(rng), pick(rng, v.lo, v.hi)});
            }
            if (!m.channels.empty() && chance(rng, 0.5)) {
                const auto& ch =
                    m.channels[pick(rng, 0,
                                    static_cast<int>(m.channels.size()) - 1)];
                jump.sync = chance(rng, 0.5) ? SyncAction::emit(ch.label)
                                             : SyncAction::receive(ch.label);
            }
            if (!a.clocks.empty() && chance(rng, 0.5))
                jump.resets.push_back(ResetAction::clock(a.clocks[0]));
            if (!a.vars.empty() && chance(rng, 0.3)) {
                const VarDecl& v = a.vars[0];
                jump.resets.push_back(
                    ResetAction::assign(v.name, pick(rng, v.lo, v.hi)));
            }
            if (std::find(a.jumps.begin(), a.jumps.end(), jump) ==
                a.jumps.end())
                a.jumps.push_back(std::move(jump));
        }
    }

    assert(validate_system(m).empty());
    return m;
}

std::pair<std::string, std::string> random_target(const SystemModel& m,
                                                  std::mt19937& rng) {
    const TimedAutomaton& a =
        m.automata[pick(rng, 0, static_cast<int>(m.automata.size()) - 1)];
    const Location& l =
        a.locations[pick(rng, 0, static_cast<int>(a.locations.size()) - 1)];
    return {a.name, l.name};
}

TimedAutomaton random_editable_automaton(std::mt19937& rng) {
    TimedAutomaton a;
    a.name = "E";
    const int n_locs = pick(rng, 2, 4);
    for (int l = 0; l < n_locs; ++l)
        a.locations.push_back(Location{"l" + std::to_string(l), {}});
    a.initial = "l0";
    const int n_clocks = pick(rng, 0, 2);
    for (int c = 0; c < n_clocks; ++c)
        a.clocks.push_back("c" + std::to_string(c));
    const int n_vars = pick(rng, 0, 2);
    for (int v = 0; v < n_vars; ++v)
        a.vars.push_back(VarDecl{"ev" + std::to_string(v), 0, 0, 3});

    const int n_jumps = pick(rng, 1, 4);
    for (int j = 0; j < n_jumps; ++j) {
        Jump jump;
        jump.source =
            a.locations[pick(rng, 0, n_locs - 1)].name;
        jump.target =
            a.locations[pick(rng, 0, n_locs - 1)].name;
        if (!a.clocks.empty() && chance(rng, 0.5))
            jump.guard.atoms.push_back(
                GuardAtom{a.clocks[0], random_rel(rng), pick(rng, 0, 9)});
        if (!a.clocks.empty() && chance(rng, 0.4))
            jump.resets.push_back(ResetAction::clock(a.clocks[0]));
        if (std::find(a.jumps.begin(), a.jumps.end(), jump) == a.jumps.end())
            a.jumps.push_back(std::move(jump));
    }
    return a;
}

EditAction random_valid_edit(const SystemModel& m, std::mt19937& rng) {
    const TimedAutomaton& a = *m.find_automaton("E");

    for (int attempt = 0; attempt < 64; ++attempt) {
        switch (pick(rng, 0, 4)) {
            case 0: {
                std::string name = "nc" + std::to_string(pick(rng, 0, 9));
                if (a.has_clock(name)) break;
                return ClockAdd{"E", name};
            }
            case 1: {
                std::string name = "nv" + std::to_string(pick(rng, 0, 9));
                if (m.find_var_anywhere(name) != nullptr) break;
                return VarAdd{"E", VarDecl{name, pick(rng, 0, 2), 0, 2}};
            }
            case 2: {
                std::string name = "nl" + std::to_string(pick(rng, 0, 9));
                if (a.has_location(name)) break;
                Location l{name, {}};
                if (!a.clocks.empty() && chance(rng, 0.5))
                    l.invariant.atoms.push_back(GuardAtom{
                        a.clocks[0], chance(rng, 0.5) ? Rel::le : Rel::lt,
                        pick(rng, 0, 9)});
                return VertexAdd{"E", std::move(l)};
            }
            case 3: {
                Jump jump;
                jump.source =
                    a.locations[pick(rng, 0,
                                     static_cast<int>(a.locations.size()) - 1)]
                        .name;
                jump.target =
                    a.locations[pick(rng, 0,
                                     static_cast<int>(a.locations.size()) - 1)]
                        .name;
                if (!a.clocks.empty())
                    jump.guard.atoms.push_back(GuardAtom{
                        a.clocks[0], random_rel(rng), pick(rng, 0, 40)});
                else if (!a.vars.empty())
                    jump.guard.atoms.push_back(GuardAtom{
                        a.vars[0].name, random_rel(rng), pick(rng, 0, 3)});
                if (!a.vars.empty() && chance(rng, 0.4))
                    jump.resets.push_back(ResetAction::assign(
                        a.vars[0].name, pick(rng, 0, 3)));
                if (std::find(a.jumps.begin(), a.jumps.end(), jump) !=
                    a.jumps.end())
                    break;
                return JumpAdd{"E", std::move(jump)};
            }
            default: {
                if (a.jumps.empty()) break;
                const Jump& old = a.jumps[pick(
                    rng, 0, static_cast<int>(a.jumps.size()) - 1)];
                Guard new_guard;
                if (!a.clocks.empty() && chance(rng, 0.7))
                    new_guard.atoms.push_back(GuardAtom{
                        a.clocks[0], random_rel(rng), pick(rng, 0, 40)});
                std::vector<ResetAction> new_resets;
                if (!a.clocks.empty() && chance(rng, 0.5))
                    new_resets.push_back(ResetAction::clock(a.clocks[0]));
                Jump candidate{old.source, new_guard, old.sync, old.target,
                               new_resets};
                if (candidate != old &&
                    std::find(a.jumps.begin(), a.jumps.end(), candidate) !=
                        a.jumps.end())
                    break;
                return JumpEdit{"E", old, std::move(new_guard),
                                std::move(new_resets), old.sync};
            }
        }
    }
    // Guaranteed-fresh fallback.
    return ClockAdd{"E", "fallback_clock_" +
                             std::to_string(a.clocks.size() + m.automata.size())};
}

}  // namespace cta::testing
