// edit.hpp — atomic edit actions over timed automata and their composition
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cta/model.hpp"

namespace cta {

class EditError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by apply_sequence; carries the index of the failing action.
class EditSequenceError : public EditError {
public:
    EditSequenceError(std::size_t index, const std::string& message)
        : EditError("action " + std::to_string(index) + ": " + message),
          index(index) {}

    std::size_t index;
};

struct ClockAdd {
    std::string automaton;
    std::string clock;
    auto operator<=>(const ClockAdd&) const = default;
};

struct VarAdd {
    std::string automaton;
    VarDecl var;
    auto operator<=>(const VarAdd&) const = default;
};

struct VertexAdd {
    std::string automaton;
    Location location;
    auto operator<=>(const VertexAdd&) const = default;
};

struct JumpAdd {
    std::string automaton;
    Jump jump;
    auto operator<=>(const JumpAdd&) const = default;
};

/// Rewrites the fully specified arc `old_jump` in place, keeping its
/// endpoints and replacing guard, resets, and synchronizer.
struct JumpEdit {
    std::string automaton;
    Jump old_jump;
    Guard new_guard;
    std::vector<ResetAction> new_resets;
    SyncAction new_sync;
    auto operator<=>(const JumpEdit&) const = default;
};

using EditAction = std::variant<ClockAdd, VarAdd, VertexAdd, JumpAdd, JumpEdit>;
using EditSequence = std::vector<EditAction>;

// Per-automaton atomic actions. Each returns a new automaton and throws
// EditError when its precondition fails. When `system` is given, guard
// references may also resolve to variables of other automata and new
// synchronizer labels are checked against the channel declarations;
// without it, references must resolve locally.
TimedAutomaton clock_add(const TimedAutomaton& a, const std::string& c);
TimedAutomaton var_add(const TimedAutomaton& a, const VarDecl& v);
TimedAutomaton vertex_add(const TimedAutomaton& a, const Location& q);
TimedAutomaton jump_add(const TimedAutomaton& a, const Jump& j,
                        const SystemModel* system = nullptr);
TimedAutomaton jump_edit(const TimedAutomaton& a, const Jump& old_jump,
                         const Guard& new_guard,
                         const std::vector<ResetAction>& new_resets,
                         const SyncAction& new_sync,
                         const SystemModel* system = nullptr);

/// Applies one action to the named automaton of the model.
SystemModel apply_action(const SystemModel& m, const EditAction& action);

/// Left-to-right fold of `seq` over `m`. All-or-nothing: the first failing
/// action aborts with EditSequenceError and the input is not modified.
SystemModel apply_sequence(const SystemModel& m, const EditSequence& seq);

// Line-oriented audit form, one action per line.
std::string script_line(const EditAction& action);
std::string to_script(const EditSequence& seq);

}  // namespace cta
