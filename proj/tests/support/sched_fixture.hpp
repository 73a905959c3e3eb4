// sched_fixture.hpp — closed scheduling systems assembled from the
// component generators: periodic releasers, quantized tasks, event agents,
// and a dispatcher, with deadline requirements attached.
#pragma once

#include <string>
#include <vector>

#include "cta/model.hpp"
#include "cta/observers.hpp"

namespace cta::testing {

struct SchedTaskParams {
    std::string name;
    long long period = 1;
    int wcet = 1;
};

struct SchedEventParams {
    std::string name;
    long long ltba = 1;
    long long deadline_interval = 1;
    int wcet = 1;
};

struct SchedParams {
    std::vector<SchedTaskParams> periodic;
    std::vector<SchedEventParams> events;
    bool round_robin = false;
    int quantum = 1;
    int accuracy = 0;   // 0: one quantum per job (accuracy = wcet)
};

/// Closed system: one releaser + task per periodic entry, one event agent
/// + handler task per event entry, and the dispatcher over all of them.
/// Deadlines run from each task's release (entry of `ready`) to `done`.
SystemModel build_sched_system(const SchedParams& params);

/// build_sched_system + deadline annotation.
VerificationModel build_annotated_sched(const SchedParams& params);

}  // namespace cta::testing
