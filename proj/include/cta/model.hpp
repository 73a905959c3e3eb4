// model.hpp — communicating timed automata: core data model and queries
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace cta {

/// Comparison relation usable in guards and invariants.
enum class Rel { lt, le, eq, ge, gt };

const char* rel_text(Rel r);                 // "<", "<=", "==", ">=", ">"
bool parse_rel(std::string_view text, Rel& out);

/// One inequality `subject ~ constant`, where subject names a clock of the
/// owning automaton or a finite-domain variable of any automaton.
struct GuardAtom {
    std::string subject;
    Rel rel = Rel::eq;
    int constant = 0;

    auto operator<=>(const GuardAtom&) const = default;
};

/// Conjunction of atoms; the empty conjunction is `true`.
struct Guard {
    std::vector<GuardAtom> atoms;

    bool is_true() const { return atoms.empty(); }
    auto operator<=>(const Guard&) const = default;
};

/// `clock := 0` or `var := k`.
struct ResetAction {
    enum class Kind { clock_reset, var_assign };

    Kind kind = Kind::clock_reset;
    std::string target;
    int value = 0;          // always 0 for clock resets

    static ResetAction clock(std::string name);
    static ResetAction assign(std::string name, int value);

    auto operator<=>(const ResetAction&) const = default;
};

/// Channel synchronizer carried by a jump: `label!`, `label?`, or nothing.
struct SyncAction {
    enum class Dir { none, emit, receive };

    Dir dir = Dir::none;
    std::string label;

    static SyncAction silent();
    static SyncAction emit(std::string label);
    static SyncAction receive(std::string label);

    bool is_silent() const { return dir == Dir::none; }
    auto operator<=>(const SyncAction&) const = default;
};

/// Finite-domain integer variable. Domains are inclusive on both ends.
struct VarDecl {
    std::string name;
    int init = 0;
    int lo = 0;
    int hi = 255;

    auto operator<=>(const VarDecl&) const = default;
};

/// A mode. Invariants are restricted to upper-bound clock atoms ({<, <=}).
struct Location {
    std::string name;
    Guard invariant;

    auto operator<=>(const Location&) const = default;
};

struct Jump {
    std::string source;
    Guard guard;
    SyncAction sync;
    std::string target;
    std::vector<ResetAction> resets;

    auto operator<=>(const Jump&) const = default;
};

struct TimedAutomaton {
    std::string name;
    std::vector<Location> locations;
    std::string initial;
    std::vector<std::string> clocks;
    std::vector<VarDecl> vars;
    std::vector<Jump> jumps;

    const Location* find_location(std::string_view name) const;
    bool has_location(std::string_view name) const;
    bool has_clock(std::string_view name) const;
    const VarDecl* find_var(std::string_view name) const;

    auto operator<=>(const TimedAutomaton&) const = default;
};

struct ChannelDecl {
    enum class Kind { handshake, broadcast };

    std::string label;
    Kind kind = Kind::handshake;

    auto operator<=>(const ChannelDecl&) const = default;
};

/// Requirement: every run entering `q` must enter `q_prime` within `bound`
/// time units.
struct DeadlineRequirement {
    std::string automaton;
    std::string q;
    std::string q_prime;
    long long bound = 1;

    auto operator<=>(const DeadlineRequirement&) const = default;
};

/// Event-triggered load: least time between arrivals plus the allowed
/// processing window (deadline interval).
struct AperiodicSpec {
    std::string label;
    long long ltba = 1;
    long long deadline_interval = 1;

    auto operator<=>(const AperiodicSpec&) const = default;
};

struct PeriodicSpec {
    std::string task;
    long long period = 1;

    auto operator<=>(const PeriodicSpec&) const = default;
};

/// Closed network of automata plus channel declarations and the timing
/// specs consumed by the observer and reduction passes.
struct SystemModel {
    std::vector<TimedAutomaton> automata;
    std::vector<ChannelDecl> channels;
    std::vector<DeadlineRequirement> deadlines;
    std::vector<AperiodicSpec> aperiodic;
    std::vector<PeriodicSpec> periodic;

    const TimedAutomaton* find_automaton(std::string_view name) const;
    TimedAutomaton* find_automaton(std::string_view name);
    const ChannelDecl* find_channel(std::string_view label) const;
    const VarDecl* find_var_anywhere(std::string_view name) const;

    auto operator<=>(const SystemModel&) const = default;
};

/// One well-formedness violation. `automaton` is empty for system-level
/// issues; `element` names the offending piece.
struct Diagnostic {
    std::string automaton;
    std::string element;
    std::string message;

    std::string to_string() const;
    auto operator<=>(const Diagnostic&) const = default;
};

/// Checks every structural invariant of the model. Empty result means
/// well-formed. Never throws; problems are data, not failures.
std::vector<Diagnostic> validate_system(const SystemModel& model);

/// Jumps whose target is `q`, in declaration order. Self-loops included.
std::vector<Jump> incoming_jumps(const TimedAutomaton& a, std::string_view q);

/// Forward closure over the jump graph from `q`, ignoring guards and
/// synchronizers. BFS order; `q` itself comes first.
std::vector<std::string> reachable_locations(const TimedAutomaton& a,
                                             std::string_view q);

/// Order-insensitive structural comparison: set-valued components (clocks,
/// vars, locations, jumps, channels) compare as sets.
TimedAutomaton normalized(TimedAutomaton a);
SystemModel normalized(SystemModel m);
bool equivalent(const TimedAutomaton& a, const TimedAutomaton& b);
bool equivalent(const SystemModel& a, const SystemModel& b);

}  // namespace cta
