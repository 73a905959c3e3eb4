// format.hpp — textual model documents (JSON) and the guard/reset/sync
// string grammar shared with the UPPAAL exporter
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cta/model.hpp"

namespace cta {

struct ParseDiagnostic {
    std::string path;        // JSON path, e.g. automata[0].jumps[2].guard
    std::size_t line = 0;    // 1-based; 0 when not tied to a byte position
    std::size_t column = 0;
    std::string message;

    std::string to_string() const;
};

struct ParseResult {
    std::optional<SystemModel> model;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return model.has_value() && diagnostics.empty(); }
};

/// Parses a model document and validates the result. On any syntax or
/// validation problem `model` is absent and `diagnostics` explains why.
ParseResult parse_model(std::string_view text);

/// Canonical rendering: sorted object keys, arrays in model order, two
/// space indent, trailing newline. parse(serialize(m)) == m.
std::string serialize_model(const SystemModel& model);

// Guard grammar: atom ::= ident rel nat, rel ::= < | <= | == | >= | >,
// atoms joined by " && ". The empty guard prints as "true".
std::string guard_text(const Guard& guard);
std::string reset_text(const ResetAction& reset);      // "x := 0"
std::string sync_text(const SyncAction& sync);         // "lbl!", "lbl?", ""

bool parse_guard(std::string_view text, Guard& out, std::string& error);
// "name := value"; whether it resets a clock or assigns a variable is
// resolved against the automaton's declarations by the model parser.
bool parse_assignment(std::string_view text, std::string& name, int& value,
                      std::string& error);
bool parse_sync(std::string_view text, SyncAction& out, std::string& error);

}  // namespace cta
