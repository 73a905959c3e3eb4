// templates.hpp — generators for the recurring component automata
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cta/model.hpp"

namespace cta {

class TemplateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point-to-point transmission with per-slot delay clocks and one overflow
/// sink. Receives on `send_<src>_<dst>`, delivers on `recv_<src>_<dst>`.
struct ChannelSpec {
    std::string source;
    std::string dest;
    int capacity = 1;   // 1 or 2
    int d_min = 0;
    int d_max = 0;
};

/// Preemptible computation tracked at quantum granularity: progress is a
/// countdown over wcet/accuracy quanta.
struct TaskSpec {
    std::string name;
    int wcet = 1;
    int accuracy = 1;   // quantum length, must divide wcet
    bool preemptible = true;
};

/// Single-location generator of sporadic events with a minimal gap.
struct EventAgentSpec {
    std::string label;
    long long ltba = 1;
};

struct DispatcherSpec {
    enum class Policy { fifo_priority, round_robin };

    Policy policy = Policy::fifo_priority;
    std::vector<std::string> tasks;   // order = priority / wheel order
    std::optional<int> quantum;       // round-robin only
};

TimedAutomaton gen_channel(const ChannelSpec& spec);
TimedAutomaton gen_task(const TaskSpec& spec);
TimedAutomaton gen_event_agent(const EventAgentSpec& spec);
TimedAutomaton gen_dispatcher(const DispatcherSpec& spec);

// Channel naming convention (stable interface).
std::string channel_send_label(const ChannelSpec& spec);
std::string channel_recv_label(const ChannelSpec& spec);
std::string task_run_label(const std::string& task);
std::string task_preempt_label(const std::string& task);
std::string task_done_label(const std::string& task);
std::string task_release_label(const std::string& task);
std::string task_progress_var(const std::string& task);

/// Channel declarations every generated automaton needs to validate inside
/// a system: handshakes for run/preempt/done and send/recv pairs,
/// broadcasts for releases and event labels.
std::vector<ChannelDecl> default_channels(const TimedAutomaton& generated);

}  // namespace cta
