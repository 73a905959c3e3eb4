// observers.hpp — deadline-violation and arrival-window observer generation
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cta/edit.hpp"
#include "cta/model.hpp"

namespace cta {

class ObserverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Window on the gap between consecutive messages of a broadcast channel.
struct ArrivalWindowSpec {
    std::string label;
    long long t_min = 0;
    long long t_max = 0;
};

// Names of the elements added for one requirement.
std::string monitor_clock_name(const DeadlineRequirement& r);
std::string monitor_var_name(const DeadlineRequirement& r);
std::string violation_location_name(const DeadlineRequirement& r);

/// Builds the edit sequence that instruments `model` with one monitor
/// clock, one pending flag, one violation location, and the escape jumps
/// for each requirement. The model itself is not modified.
EditSequence emit_deadline_edits(const SystemModel& model,
                                 const std::vector<DeadlineRequirement>& reqs);

struct VerificationModel {
    SystemModel model;
    // (automaton, violation location), one entry per requirement.
    std::vector<std::pair<std::string, std::string>> violation_targets;
};

/// emit_deadline_edits followed by apply_sequence.
VerificationModel gen_verification_model(
    const SystemModel& model, const std::vector<DeadlineRequirement>& reqs);

/// Three-location observer {waiting, armed, violated} over one clock:
/// the first message arms the window; afterwards a message earlier than
/// t_min, or silence beyond t_max, reaches the `violated` sink. Arrivals
/// exactly on either boundary are on time.
TimedAutomaton gen_window_observer(const ArrivalWindowSpec& spec);

/// Appends the observer to the model. The label must be declared broadcast
/// so that observation never consumes a handshake pairing.
SystemModel add_window_observer(const SystemModel& model,
                                const ArrivalWindowSpec& spec);

}  // namespace cta
