#include "cta/format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace cta {

using nlohmann::json;

std::string ParseDiagnostic::to_string() const {
    std::ostringstream oss;
    if (line > 0) oss << "line " << line << ", column " << column << ": ";
    if (!path.empty()) oss << path << ": ";
    oss << message;
    return oss.str();
}

// ---------------------------------------------------------------------------
// Guard / reset / sync strings
// ---------------------------------------------------------------------------

std::string guard_text(const Guard& guard) {
    if (guard.is_true()) return "true";
    std::ostringstream oss;
    for (std::size_t i = 0; i < guard.atoms.size(); ++i) {
        if (i > 0) oss << " && ";
        oss << guard.atoms[i].subject << ' ' << rel_text(guard.atoms[i].rel)
            << ' ' << guard.atoms[i].constant;
    }
    return oss.str();
}

std::string reset_text(const ResetAction& reset) {
    const int value =
        reset.kind == ResetAction::Kind::clock_reset ? 0 : reset.value;
    return reset.target + " := " + std::to_string(value);
}

std::string sync_text(const SyncAction& sync) {
    switch (sync.dir) {
        case SyncAction::Dir::emit: return sync.label + "!";
        case SyncAction::Dir::receive: return sync.label + "?";
        case SyncAction::Dir::none: break;
    }
    return "";
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(
                                        static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    bool literal(std::string_view lit) {
        skip_ws();
        if (text.substr(pos, lit.size()) != lit) return false;
        pos += lit.size();
        return true;
    }
    bool ident(std::string& out) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '_'))
            ++pos;
        if (pos == start) return false;
        out = std::string(text.substr(start, pos - start));
        return true;
    }
    bool natural(int& out) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) return false;
        out = 0;
        for (std::size_t i = start; i < pos; ++i) {
            if (out > 200'000'000) return false;
            out = out * 10 + (text[i] - '0');
        }
        return true;
    }
    std::string here() const { return "column " + std::to_string(pos + 1); }
};

bool parse_rel_at(Cursor& c, Rel& out) {
    c.skip_ws();
    // Longest match first.
    for (std::string_view tok : {"<=", ">=", "==", "<", ">"}) {
        if (c.text.substr(c.pos, tok.size()) == tok) {
            c.pos += tok.size();
            return parse_rel(tok, out);
        }
    }
    return false;
}

}  // namespace

bool parse_guard(std::string_view text, Guard& out, std::string& error) {
    out.atoms.clear();
    Cursor c{text};
    if (c.done()) return true;              // empty means true
    if (c.literal("true")) {
        if (!c.done()) {
            error = "trailing input after 'true' at " + c.here();
            return false;
        }
        return true;
    }
    while (true) {
        GuardAtom atom;
        if (!c.ident(atom.subject)) {
            error = "expected identifier at " + c.here();
            return false;
        }
        if (!parse_rel_at(c, atom.rel)) {
            error = "expected relation (<, <=, ==, >=, >) at " + c.here();
            return false;
        }
        if (!c.natural(atom.constant)) {
            error = "expected natural number at " + c.here();
            return false;
        }
        out.atoms.push_back(std::move(atom));
        if (c.done()) return true;
        if (!c.literal("&&")) {
            error = "expected '&&' at " + c.here();
            return false;
        }
    }
}

bool parse_assignment(std::string_view text, std::string& name, int& value,
                      std::string& error) {
    Cursor c{text};
    if (!c.ident(name)) {
        error = "expected identifier at " + c.here();
        return false;
    }
    if (!c.literal(":=")) {
        error = "expected ':=' at " + c.here();
        return false;
    }
    if (!c.natural(value)) {
        error = "expected natural number at " + c.here();
        return false;
    }
    if (!c.done()) {
        error = "trailing input at " + c.here();
        return false;
    }
    return true;
}

bool parse_sync(std::string_view text, SyncAction& out, std::string& error) {
    Cursor c{text};
    if (c.done()) {
        out = SyncAction::silent();
        return true;
    }
    std::string label;
    if (!c.ident(label)) {
        error = "expected channel label at " + c.here();
        return false;
    }
    if (c.literal("!"))
        out = SyncAction::emit(label);
    else if (c.literal("?"))
        out = SyncAction::receive(label);
    else {
        error = "expected '!' or '?' at " + c.here();
        return false;
    }
    if (!c.done()) {
        error = "trailing input at " + c.here();
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// parse_model
// ---------------------------------------------------------------------------

namespace {

class DocReader {
public:
    explicit DocReader(std::vector<ParseDiagnostic>& diags) : diags_(diags) {}

    void fail(const std::string& path, const std::string& message) {
        diags_.push_back(ParseDiagnostic{path, 0, 0, message});
    }

    bool expect_object(const json& j, const std::string& path) {
        if (j.is_object()) return true;
        fail(path, "expected an object");
        return false;
    }

    bool expect_array(const json& j, const std::string& path) {
        if (j.is_array()) return true;
        fail(path, "expected an array");
        return false;
    }

    std::string str(const json& j, const std::string& path,
                    const char* key, bool required = true) {
        if (!j.contains(key)) {
            if (required) fail(path, std::string("missing key '") + key + "'");
            return "";
        }
        if (!j[key].is_string()) {
            fail(path + "." + key, "expected a string");
            return "";
        }
        return j[key].get<std::string>();
    }

    long long integer(const json& j, const std::string& path, const char* key,
                      long long fallback = 0, bool required = true) {
        if (!j.contains(key)) {
            if (required) fail(path, std::string("missing key '") + key + "'");
            return fallback;
        }
        if (!j[key].is_number_integer()) {
            fail(path + "." + key, "expected an integer");
            return fallback;
        }
        return j[key].get<long long>();
    }

private:
    std::vector<ParseDiagnostic>& diags_;
};

Guard read_guard(const json& j, const std::string& path, const char* key,
                 DocReader& r) {
    Guard g;
    if (!j.contains(key)) return g;
    if (!j[key].is_string()) {
        r.fail(path + "." + key, "expected a guard string");
        return g;
    }
    std::string error;
    if (!parse_guard(j[key].get<std::string>(), g, error))
        r.fail(path + "." + key, error);
    return g;
}

TimedAutomaton read_automaton(const json& j, const std::string& path,
                              DocReader& r) {
    TimedAutomaton a;
    a.name = r.str(j, path, "name");
    a.initial = r.str(j, path, "initial");

    if (j.contains("clocks")) {
        if (r.expect_array(j["clocks"], path + ".clocks")) {
            for (const auto& c : j["clocks"]) {
                if (c.is_string())
                    a.clocks.push_back(c.get<std::string>());
                else
                    r.fail(path + ".clocks", "expected a string");
            }
        }
    }

    if (j.contains("vars") && r.expect_array(j["vars"], path + ".vars")) {
        std::size_t i = 0;
        for (const auto& vj : j["vars"]) {
            const std::string vpath =
                path + ".vars[" + std::to_string(i++) + "]";
            if (!r.expect_object(vj, vpath)) continue;
            VarDecl v;
            v.name = r.str(vj, vpath, "name");
            v.init = static_cast<int>(r.integer(vj, vpath, "init"));
            if (vj.contains("domain")) {
                const auto& d = vj["domain"];
                if (d.is_array() && d.size() == 2 &&
                    d[0].is_number_integer() && d[1].is_number_integer()) {
                    v.lo = d[0].get<int>();
                    v.hi = d[1].get<int>();
                } else {
                    r.fail(vpath + ".domain", "expected [lo, hi]");
                }
            } else {
                v.lo = 0;
                v.hi = 255;   // default finite domain
            }
            a.vars.push_back(std::move(v));
        }
    }

    if (j.contains("locations") &&
        r.expect_array(j["locations"], path + ".locations")) {
        std::size_t i = 0;
        for (const auto& lj : j["locations"]) {
            const std::string lpath =
                path + ".locations[" + std::to_string(i++) + "]";
            if (!r.expect_object(lj, lpath)) continue;
            Location l;
            l.name = r.str(lj, lpath, "name");
            l.invariant = read_guard(lj, lpath, "invariant", r);
            a.locations.push_back(std::move(l));
        }
    }

    if (j.contains("jumps") && r.expect_array(j["jumps"], path + ".jumps")) {
        std::size_t i = 0;
        for (const auto& jj : j["jumps"]) {
            const std::string jpath =
                path + ".jumps[" + std::to_string(i++) + "]";
            if (!r.expect_object(jj, jpath)) continue;
            Jump jump;
            jump.source = r.str(jj, jpath, "from");
            jump.target = r.str(jj, jpath, "to");
            jump.guard = read_guard(jj, jpath, "guard", r);
            if (jj.contains("sync")) {
                if (!jj["sync"].is_string()) {
                    r.fail(jpath + ".sync", "expected a sync string");
                } else {
                    std::string error;
                    if (!parse_sync(jj["sync"].get<std::string>(), jump.sync,
                                    error))
                        r.fail(jpath + ".sync", error);
                }
            }
            if (jj.contains("resets") &&
                r.expect_array(jj["resets"], jpath + ".resets")) {
                std::size_t k = 0;
                for (const auto& rj : jj["resets"]) {
                    const std::string rpath =
                        jpath + ".resets[" + std::to_string(k++) + "]";
                    if (!rj.is_string()) {
                        r.fail(rpath, "expected an assignment string");
                        continue;
                    }
                    std::string name, error;
                    int value = 0;
                    if (!parse_assignment(rj.get<std::string>(), name, value,
                                          error)) {
                        r.fail(rpath, error);
                        continue;
                    }
                    // A name matching a local clock is a clock reset.
                    if (std::find(a.clocks.begin(), a.clocks.end(), name) !=
                        a.clocks.end()) {
                        if (value != 0)
                            r.fail(rpath, "clock reset must assign 0");
                        jump.resets.push_back(ResetAction::clock(name));
                    } else {
                        jump.resets.push_back(
                            ResetAction::assign(name, value));
                    }
                }
            }
            a.jumps.push_back(std::move(jump));
        }
    }
    return a;
}

void position_of(std::string_view text, std::size_t byte, std::size_t& line,
                 std::size_t& column) {
    line = 1;
    column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

}  // namespace

ParseResult parse_model(std::string_view text) {
    ParseResult result;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        ParseDiagnostic d;
        d.message = e.what();
        position_of(text, e.byte > 0 ? e.byte - 1 : 0, d.line, d.column);
        result.diagnostics.push_back(std::move(d));
        return result;
    }

    DocReader r(result.diagnostics);
    if (!r.expect_object(doc, "$")) return result;

    SystemModel m;
    if (doc.contains("automata") &&
        r.expect_array(doc["automata"], "automata")) {
        std::size_t i = 0;
        for (const auto& aj : doc["automata"]) {
            const std::string path = "automata[" + std::to_string(i++) + "]";
            if (!r.expect_object(aj, path)) continue;
            m.automata.push_back(read_automaton(aj, path, r));
        }
    }

    if (doc.contains("channels") &&
        r.expect_array(doc["channels"], "channels")) {
        std::size_t i = 0;
        for (const auto& cj : doc["channels"]) {
            const std::string path = "channels[" + std::to_string(i++) + "]";
            if (!r.expect_object(cj, path)) continue;
            ChannelDecl c;
            c.label = r.str(cj, path, "label");
            const std::string kind = r.str(cj, path, "kind");
            if (kind == "handshake")
                c.kind = ChannelDecl::Kind::handshake;
            else if (kind == "broadcast")
                c.kind = ChannelDecl::Kind::broadcast;
            else
                r.fail(path + ".kind", "expected 'handshake' or 'broadcast'");
            m.channels.push_back(std::move(c));
        }
    }

    if (doc.contains("deadlines") &&
        r.expect_array(doc["deadlines"], "deadlines")) {
        std::size_t i = 0;
        for (const auto& dj : doc["deadlines"]) {
            const std::string path = "deadlines[" + std::to_string(i++) + "]";
            if (!r.expect_object(dj, path)) continue;
            DeadlineRequirement d;
            d.automaton = r.str(dj, path, "automaton");
            d.q = r.str(dj, path, "q");
            d.q_prime = r.str(dj, path, "q_prime");
            d.bound = r.integer(dj, path, "T", 1);
            m.deadlines.push_back(std::move(d));
        }
    }

    if (doc.contains("aperiodic") &&
        r.expect_array(doc["aperiodic"], "aperiodic")) {
        std::size_t i = 0;
        for (const auto& sj : doc["aperiodic"]) {
            const std::string path = "aperiodic[" + std::to_string(i++) + "]";
            if (!r.expect_object(sj, path)) continue;
            AperiodicSpec s;
            s.label = r.str(sj, path, "label");
            s.ltba = r.integer(sj, path, "ltba", 1);
            s.deadline_interval = r.integer(sj, path, "deadline_interval", 1);
            m.aperiodic.push_back(std::move(s));
        }
    }

    if (doc.contains("periodic") &&
        r.expect_array(doc["periodic"], "periodic")) {
        std::size_t i = 0;
        for (const auto& sj : doc["periodic"]) {
            const std::string path = "periodic[" + std::to_string(i++) + "]";
            if (!r.expect_object(sj, path)) continue;
            PeriodicSpec s;
            s.task = r.str(sj, path, "task");
            s.period = r.integer(sj, path, "period", 1);
            m.periodic.push_back(std::move(s));
        }
    }

    if (!result.diagnostics.empty()) return result;

    for (const auto& d : validate_system(m))
        result.diagnostics.push_back(ParseDiagnostic{
            d.automaton.empty() ? d.element : d.automaton + "." + d.element,
            0, 0, d.message});
    if (!result.diagnostics.empty()) return result;

    result.model = std::move(m);
    return result;
}

// ---------------------------------------------------------------------------
// serialize_model
// ---------------------------------------------------------------------------

std::string serialize_model(const SystemModel& m) {
    json doc = json::object();

    doc["automata"] = json::array();
    for (const auto& a : m.automata) {
        json aj = json::object();
        aj["name"] = a.name;
        aj["initial"] = a.initial;
        if (!a.clocks.empty()) aj["clocks"] = a.clocks;
        if (!a.vars.empty()) {
            json vars = json::array();
            for (const auto& v : a.vars)
                vars.push_back(json{{"name", v.name},
                                    {"init", v.init},
                                    {"domain", json::array({v.lo, v.hi})}});
            aj["vars"] = std::move(vars);
        }
        json locs = json::array();
        for (const auto& l : a.locations) {
            json lj = json::object();
            lj["name"] = l.name;
            if (!l.invariant.is_true())
                lj["invariant"] = guard_text(l.invariant);
            locs.push_back(std::move(lj));
        }
        aj["locations"] = std::move(locs);
        if (!a.jumps.empty()) {
            json jumps = json::array();
            for (const auto& j : a.jumps) {
                json jj = json::object();
                jj["from"] = j.source;
                jj["to"] = j.target;
                if (!j.guard.is_true()) jj["guard"] = guard_text(j.guard);
                if (j.sync.dir != SyncAction::Dir::none)
                    jj["sync"] = sync_text(j.sync);
                if (!j.resets.empty()) {
                    json resets = json::array();
                    for (const auto& rst : j.resets)
                        resets.push_back(reset_text(rst));
                    jj["resets"] = std::move(resets);
                }
                jumps.push_back(std::move(jj));
            }
            aj["jumps"] = std::move(jumps);
        }
        doc["automata"].push_back(std::move(aj));
    }

    if (!m.channels.empty()) {
        json channels = json::array();
        for (const auto& c : m.channels)
            channels.push_back(
                json{{"label", c.label},
                     {"kind", c.kind == ChannelDecl::Kind::handshake
                                  ? "handshake"
                                  : "broadcast"}});
        doc["channels"] = std::move(channels);
    }
    if (!m.deadlines.empty()) {
        json deadlines = json::array();
        for (const auto& d : m.deadlines)
            deadlines.push_back(json{{"automaton", d.automaton},
                                     {"q", d.q},
                                     {"q_prime", d.q_prime},
                                     {"T", d.bound}});
        doc["deadlines"] = std::move(deadlines);
    }
    if (!m.aperiodic.empty()) {
        json aperiodic = json::array();
        for (const auto& s : m.aperiodic)
            aperiodic.push_back(json{{"label", s.label},
                                     {"ltba", s.ltba},
                                     {"deadline_interval",
                                      s.deadline_interval}});
        doc["aperiodic"] = std::move(aperiodic);
    }
    if (!m.periodic.empty()) {
        json periodic = json::array();
        for (const auto& s : m.periodic)
            periodic.push_back(json{{"task", s.task}, {"period", s.period}});
        doc["periodic"] = std::move(periodic);
    }

    return doc.dump(2) + "\n";
}

}  // namespace cta
