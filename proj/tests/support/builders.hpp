// builders.hpp — small helpers for constructing models in tests
#pragma once

#include <cassert>
#include <string>

#include "cta/format.hpp"
#include "cta/model.hpp"

namespace cta::testing {

inline Guard guard(const std::string& text) {
    Guard g;
    std::string error;
    const bool ok = parse_guard(text, g, error);
    assert(ok && "bad guard literal in test");
    (void)ok;
    return g;
}

/// Ring a -> b -> c -> a over one clock `t`.
inline TimedAutomaton ring_automaton(const std::string& name = "R") {
    TimedAutomaton a;
    a.name = name;
    a.initial = "a";
    a.clocks = {"t"};
    a.locations = {Location{"a", {}}, Location{"b", {}}, Location{"c", {}}};
    a.jumps = {
        Jump{"a", {}, SyncAction::silent(), "b", {ResetAction::clock("t")}},
        Jump{"b", {}, SyncAction::silent(), "c", {ResetAction::clock("t")}},
        Jump{"c", {}, SyncAction::silent(), "a", {ResetAction::clock("t")}},
    };
    return a;
}

inline SystemModel ring_model() {
    SystemModel m;
    m.automata.push_back(ring_automaton());
    return m;
}

/// Two automata synchronizing once on a handshake channel `go`.
inline SystemModel handshake_model() {
    SystemModel m;
    m.channels.push_back(ChannelDecl{"go", ChannelDecl::Kind::handshake});

    TimedAutomaton sender;
    sender.name = "S";
    sender.initial = "s0";
    sender.clocks = {"x"};
    sender.locations = {Location{"s0", {}}, Location{"s1", {}}};
    sender.jumps = {Jump{"s0", guard("x > 1"), SyncAction::emit("go"), "s1",
                         {ResetAction::clock("x")}}};
    m.automata.push_back(std::move(sender));

    TimedAutomaton receiver;
    receiver.name = "T";
    receiver.initial = "r0";
    receiver.locations = {Location{"r0", {}}, Location{"r1", {}}};
    receiver.jumps = {
        Jump{"r0", {}, SyncAction::receive("go"), "r1", {}}};
    m.automata.push_back(std::move(receiver));
    return m;
}

/// Single automaton with a two-segment path s0 -> s1 -> s2 -> s3 whose
/// forced dwell in s1 plus s2 is exactly `duration`.
inline SystemModel forced_path_model(int duration) {
    assert(duration >= 2);
    const int first = 1;
    const int second = duration - first;

    TimedAutomaton a;
    a.name = "P";
    a.initial = "s0";
    a.clocks = {"x"};
    a.locations = {
        Location{"s0", {}},
        Location{"s1", guard("x <= " + std::to_string(first))},
        Location{"s2", guard("x <= " + std::to_string(second))},
        Location{"s3", {}},
    };
    a.jumps = {
        Jump{"s0", {}, SyncAction::silent(), "s1", {ResetAction::clock("x")}},
        Jump{"s1", guard("x >= " + std::to_string(first)),
             SyncAction::silent(), "s2", {ResetAction::clock("x")}},
        Jump{"s2", guard("x >= " + std::to_string(second)),
             SyncAction::silent(), "s3", {ResetAction::clock("x")}},
    };
    SystemModel m;
    m.automata.push_back(std::move(a));
    return m;
}

}  // namespace cta::testing
