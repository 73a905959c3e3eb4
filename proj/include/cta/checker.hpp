// checker.hpp — zone-based reachability over automaton networks, plus an
// independent region-graph oracle for desk-scale cross-validation
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cta/model.hpp"

namespace cta {

struct ReachTarget {
    std::string automaton;
    std::string location;
};

struct TraceParticipant {
    std::string automaton;
    std::size_t jump_index = 0;   // declaration index within the automaton
    std::string from;
    std::string to;
};

/// One discrete step of a witness; a (symbolic) delay precedes each step.
struct TraceStep {
    enum class Kind { silent, handshake, broadcast };

    Kind kind = Kind::silent;
    std::string channel;          // empty for silent steps
    std::vector<TraceParticipant> participants;

    std::string to_string() const;
};

struct ExplorationStats {
    std::size_t states_explored = 0;   // symbolic states stored
    std::size_t peak_waiting = 0;
    int max_constant = 0;

    std::string to_string() const;     // stable key=value lines
};

struct ReachResult {
    bool reachable = false;
    std::vector<TraceStep> trace;      // empty when unreachable
    ExplorationStats stats;
};

struct ReachOptions {
    bool use_subsumption = true;
    /// Keep exploring after the first hit; stats then cover the full
    /// symbolic state space.
    bool exhaustive = false;
    std::size_t state_limit = 2'000'000;
};

/// Forward symbolic exploration (breadth-first, deterministic order).
/// Discrete steps are silent jumps, handshake pairs, and broadcasts where
/// every enabled receiver participates (zero receivers allowed).
ReachResult reach(const SystemModel& model, const ReachTarget& target,
                  const ReachOptions& options = {});

/// Replays a witness under the same transition relation.
bool verify_trace(const SystemModel& model, const ReachTarget& target,
                  const std::vector<TraceStep>& trace);

enum class Verdict { reachable, unreachable };

class RegionLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact dense-time verdict by explicit region-graph enumeration. Enforced
/// limits: at most 3 automata, 3 clocks, 6 locations per automaton, clock
/// constants at most 5, and a small variable state space.
Verdict region_reach(const SystemModel& model, const ReachTarget& target);

}  // namespace cta
