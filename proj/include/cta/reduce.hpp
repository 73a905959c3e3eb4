// reduce.hpp — event-gap reduction with verdict-preserving bounds
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cta/model.hpp"

namespace cta {

class ReduceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReductionEntry {
    std::string label;
    long long old_ltba = 0;
    long long bound = 0;
    long long new_ltba = 0;
    bool applied = false;

    auto operator<=>(const ReductionEntry&) const = default;
};

struct ReductionReport {
    long long base_period = 0;   // T, or lcm of the periods
    bool applied = false;        // all-or-nothing over the events
    std::vector<ReductionEntry> events;
};

/// One periodic function with period T, one event: T_p + T.
long long bound_single(long long period, const AperiodicSpec& spec);

/// One periodic function, several events: T * (sum of ceil(T_p_i / T)) + T,
/// shared by every event.
long long bound_multi(long long period, const std::vector<AperiodicSpec>& specs);

/// Several periodic functions: the multi-event bound over the least common
/// multiple of the periods. Throws on overflow rather than wrapping.
long long bound_general(const std::vector<long long>& periods,
                        const std::vector<AperiodicSpec>& specs);

/// Rewrites every event agent's gap guard to the applicable bound when all
/// events exceed it; otherwise returns the model unchanged. Agents are
/// matched to `model.aperiodic` by emitted label and must have the
/// canonical single-self-loop shape.
std::pair<SystemModel, ReductionReport> apply_reduction(const SystemModel& m);

/// Stable-key text rendering of a report.
std::string report_text(const ReductionReport& report);

}  // namespace cta
