#include "cta/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cta/checker.hpp"
#include "cta/edit.hpp"
#include "cta/format.hpp"
#include "cta/model.hpp"
#include "cta/observers.hpp"
#include "cta/reduce.hpp"
#include "cta/templates.hpp"
#include "cta/uppaal.hpp"

namespace cta {

namespace {

struct CliFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure("cannot open '" + path + "'");
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliFailure("cannot write '" + path + "'");
    out << content;
}

SystemModel load_model(const std::string& path) {
    ParseResult parsed = parse_model(read_file(path));
    if (!parsed.ok()) {
        std::ostringstream oss;
        oss << path << " has problems:";
        for (const auto& d : parsed.diagnostics)
            oss << "\n  " << d.to_string();
        throw CliFailure(oss.str());
    }
    return std::move(*parsed.model);
}

SystemModel wrap_generated(TimedAutomaton automaton) {
    SystemModel m;
    m.channels = default_channels(automaton);
    m.automata.push_back(std::move(automaton));
    return m;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Toolkit for communicating-timed-automata models of "
                 "distributed real-time systems"};
    app.require_subcommand(1);

    // validate
    std::string validate_path;
    auto* cmd_validate =
        app.add_subcommand("validate", "Check a model document");
    cmd_validate->add_option("model", validate_path)->required();

    // annotate
    std::string annotate_path, annotate_out, annotate_script;
    auto* cmd_annotate = app.add_subcommand(
        "annotate", "Instrument the document's deadline requirements");
    cmd_annotate->add_option("model", annotate_path)->required();
    cmd_annotate->add_option("--out", annotate_out)->required();
    cmd_annotate->add_option("--script", annotate_script,
                             "Also write the edit sequence as a script");

    // window
    std::string window_path, window_label, window_out;
    long long window_min = 0, window_max = 0;
    auto* cmd_window = app.add_subcommand(
        "window", "Attach an arrival-window observer to a broadcast channel");
    cmd_window->add_option("model", window_path)->required();
    cmd_window->add_option("--label", window_label)->required();
    cmd_window->add_option("--min", window_min)->required();
    cmd_window->add_option("--max", window_max)->required();
    cmd_window->add_option("--out", window_out)->required();

    // reduce
    std::string reduce_path, reduce_out, reduce_report;
    auto* cmd_reduce = app.add_subcommand(
        "reduce", "Shrink event-agent gaps to the verdict-preserving bound");
    cmd_reduce->add_option("model", reduce_path)->required();
    cmd_reduce->add_option("--out", reduce_out)->required();
    cmd_reduce->add_option("--report", reduce_report);

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "Generate component automata");
    cmd_gen->require_subcommand(1);

    std::string chan_source, chan_dest, chan_out;
    int chan_capacity = 1, chan_dmin = 0, chan_dmax = 0;
    auto* gen_channel_cmd =
        cmd_gen->add_subcommand("channel", "Point-to-point channel");
    gen_channel_cmd->add_option("--source", chan_source)->required();
    gen_channel_cmd->add_option("--dest", chan_dest)->required();
    gen_channel_cmd->add_option("--capacity", chan_capacity);
    gen_channel_cmd->add_option("--dmin", chan_dmin);
    gen_channel_cmd->add_option("--dmax", chan_dmax);
    gen_channel_cmd->add_option("--out", chan_out)->required();

    std::string task_name, task_out;
    int task_wcet = 1, task_accuracy = 1;
    bool task_preemptible = false;
    auto* gen_task_cmd =
        cmd_gen->add_subcommand("task", "Quantized task execution");
    gen_task_cmd->add_option("--name", task_name)->required();
    gen_task_cmd->add_option("--wcet", task_wcet)->required();
    gen_task_cmd->add_option("--accuracy", task_accuracy)->required();
    gen_task_cmd->add_flag("--preemptible", task_preemptible);
    gen_task_cmd->add_option("--out", task_out)->required();

    std::string agent_label, agent_out;
    long long agent_ltba = 1;
    auto* gen_agent_cmd =
        cmd_gen->add_subcommand("event-agent", "Sporadic event generator");
    gen_agent_cmd->add_option("--label", agent_label)->required();
    gen_agent_cmd->add_option("--ltba", agent_ltba)->required();
    gen_agent_cmd->add_option("--out", agent_out)->required();

    std::string disp_policy = "fifo-priority", disp_out;
    std::vector<std::string> disp_tasks;
    int disp_quantum = 0;
    auto* gen_disp_cmd =
        cmd_gen->add_subcommand("dispatcher", "Priority-based dispatcher");
    gen_disp_cmd->add_option("--policy", disp_policy)
        ->check(CLI::IsMember({"fifo-priority", "round-robin"}));
    gen_disp_cmd->add_option("--tasks", disp_tasks)
        ->required()
        ->delimiter(',');
    gen_disp_cmd->add_option("--quantum", disp_quantum);
    gen_disp_cmd->add_option("--out", disp_out)->required();

    // export-uppaal
    std::string export_path, export_out;
    auto* cmd_export =
        app.add_subcommand("export-uppaal", "Write an UPPAAL nta document");
    cmd_export->add_option("model", export_path)->required();
    cmd_export->add_option("--out", export_out)->required();

    // check
    std::string check_path, check_target, check_stats;
    bool check_oracle = false, check_fail_on_reachable = false;
    bool check_exhaustive = false;
    auto* cmd_check =
        app.add_subcommand("check", "Reachability of <automaton>.<location>");
    cmd_check->add_option("model", check_path)->required();
    cmd_check->add_option("--target", check_target)->required();
    cmd_check->add_flag("--oracle", check_oracle,
                        "Use the region-graph oracle instead of zones");
    cmd_check->add_flag("--exhaustive", check_exhaustive,
                        "Explore the full state space even after a hit");
    cmd_check->add_option("--stats", check_stats);
    cmd_check->add_flag("--fail-on-reachable", check_fail_on_reachable,
                        "Exit with code 2 when the target is reachable");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends.
            return app.exit(e);
        }
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_validate->parsed()) {
            ParseResult parsed = parse_model(read_file(validate_path));
            if (parsed.ok()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& d : parsed.diagnostics)
                std::cerr << d.to_string() << '\n';
            return 1;
        }

        if (cmd_annotate->parsed()) {
            SystemModel m = load_model(annotate_path);
            EditSequence seq = emit_deadline_edits(m, m.deadlines);
            VerificationModel vm = gen_verification_model(m, m.deadlines);
            write_file(annotate_out, serialize_model(vm.model));
            if (!annotate_script.empty())
                write_file(annotate_script, to_script(seq));
            for (const auto& [automaton, location] : vm.violation_targets)
                std::cout << automaton << '.' << location << '\n';
            return 0;
        }

        if (cmd_window->parsed()) {
            SystemModel m = load_model(window_path);
            SystemModel out = add_window_observer(
                m, ArrivalWindowSpec{window_label, window_min, window_max});
            write_file(window_out, serialize_model(out));
            return 0;
        }

        if (cmd_reduce->parsed()) {
            SystemModel m = load_model(reduce_path);
            auto [reduced, report] = apply_reduction(m);
            write_file(reduce_out, serialize_model(reduced));
            const std::string text = report_text(report);
            if (!reduce_report.empty()) write_file(reduce_report, text);
            std::cout << text;
            return 0;
        }

        if (gen_channel_cmd->parsed()) {
            ChannelSpec spec{chan_source, chan_dest, chan_capacity, chan_dmin,
                             chan_dmax};
            write_file(chan_out,
                       serialize_model(wrap_generated(gen_channel(spec))));
            return 0;
        }
        if (gen_task_cmd->parsed()) {
            TaskSpec spec{task_name, task_wcet, task_accuracy,
                          task_preemptible};
            write_file(task_out,
                       serialize_model(wrap_generated(gen_task(spec))));
            return 0;
        }
        if (gen_agent_cmd->parsed()) {
            EventAgentSpec spec{agent_label, agent_ltba};
            write_file(agent_out,
                       serialize_model(wrap_generated(gen_event_agent(spec))));
            return 0;
        }
        if (gen_disp_cmd->parsed()) {
            DispatcherSpec spec;
            spec.policy = disp_policy == "round-robin"
                              ? DispatcherSpec::Policy::round_robin
                              : DispatcherSpec::Policy::fifo_priority;
            spec.tasks = disp_tasks;
            if (gen_disp_cmd->count("--quantum") > 0)
                spec.quantum = disp_quantum;
            write_file(disp_out,
                       serialize_model(wrap_generated(gen_dispatcher(spec))));
            return 0;
        }

        if (cmd_export->parsed()) {
            SystemModel m = load_model(export_path);
            write_file(export_out, export_uppaal(m));
            return 0;
        }

        if (cmd_check->parsed()) {
            SystemModel m = load_model(check_path);
            const auto dot = check_target.find('.');
            if (dot == std::string::npos)
                throw CliFailure(
                    "--target must be of the form <automaton>.<location>");
            ReachTarget target{check_target.substr(0, dot),
                               check_target.substr(dot + 1)};

            bool reachable = false;
            if (check_oracle) {
                reachable =
                    region_reach(m, target) == Verdict::reachable;
                std::cout << (reachable ? "REACHABLE" : "UNREACHABLE")
                          << '\n';
            } else {
                ReachOptions options;
                options.exhaustive = check_exhaustive;
                ReachResult result = reach(m, target, options);
                reachable = result.reachable;
                std::cout << (reachable ? "REACHABLE" : "UNREACHABLE")
                          << '\n';
                for (std::size_t i = 0; i < result.trace.size(); ++i)
                    std::cout << "  step " << (i + 1) << ": "
                              << result.trace[i].to_string() << '\n';
                if (!check_stats.empty())
                    write_file(check_stats, result.stats.to_string());
            }
            if (check_fail_on_reachable && reachable) return 2;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    std::cerr << "error: no subcommand\n";
    return 1;
}

}  // namespace cta
