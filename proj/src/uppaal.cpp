#include "cta/uppaal.hpp"

#include <set>
#include <sstream>

#include "cta/format.hpp"

namespace cta {

namespace {

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words{
        "chan",    "clock",   "bool",     "int",    "commit", "const",
        "urgent",  "broadcast", "init",   "process", "state", "guard",
        "sync",    "assign",  "system",   "trans",  "deadlock", "and",
        "or",      "not",     "imply",    "true",   "false",  "for",
        "forall",  "exists",  "while",    "do",     "if",     "else",
        "return",  "typedef", "struct",   "rate",   "before_update",
        "after_update", "meta", "priority", "progress", "scalar",
        "select",  "void",    "default",  "switch", "case",   "continue",
        "break"};
    return words;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c; break;
        }
    }
    return out;
}

void collect_offenders(const SystemModel& m, std::set<std::string>& out) {
    auto check = [&out](const std::string& name) {
        if (reserved_words().count(name)) out.insert(name);
    };
    for (const auto& c : m.channels) check(c.label);
    for (const auto& a : m.automata) {
        check(a.name);
        for (const auto& c : a.clocks) check(c);
        for (const auto& v : a.vars) check(v.name);
        for (const auto& l : a.locations) check(l.name);
    }
}

std::string assignment_text(const std::vector<ResetAction>& resets) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < resets.size(); ++i) {
        if (i > 0) oss << ", ";
        oss << reset_text(resets[i]);
    }
    return oss.str();
}

}  // namespace

std::string export_uppaal(const SystemModel& m) {
    std::set<std::string> offenders;
    collect_offenders(m, offenders);
    if (!offenders.empty()) {
        std::ostringstream oss;
        oss << "identifiers collide with UPPAAL reserved words:";
        for (const auto& name : offenders) oss << ' ' << name;
        throw UppaalExportError(oss.str());
    }

    std::ostringstream oss;
    oss << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
    oss << "<!DOCTYPE nta PUBLIC '-//Uppaal Team//DTD Flat System 1.1//EN' "
           "'http://www.it.uu.se/research/group/darts/uppaal/flat-1_1.dtd'>\n";
    oss << "<nta>\n";

    // Global declaration: channels and finite-domain variables.
    oss << "  <declaration>";
    std::ostringstream decl;
    for (const auto& c : m.channels) {
        if (c.kind == ChannelDecl::Kind::broadcast)
            decl << "broadcast chan " << c.label << ";\n";
        else
            decl << "chan " << c.label << ";\n";
    }
    for (const auto& a : m.automata)
        for (const auto& v : a.vars)
            decl << "int[" << v.lo << "," << v.hi << "] " << v.name << " = "
                 << v.init << ";\n";
    oss << xml_escape(decl.str()) << "</declaration>\n";

    for (const auto& a : m.automata) {
        oss << "  <template>\n";
        oss << "    <name>" << xml_escape(a.name) << "</name>\n";
        if (!a.clocks.empty()) {
            std::ostringstream local;
            local << "clock";
            for (std::size_t i = 0; i < a.clocks.size(); ++i)
                local << (i == 0 ? " " : ", ") << a.clocks[i];
            local << ";\n";
            oss << "    <declaration>" << xml_escape(local.str())
                << "</declaration>\n";
        }

        int x = 0;
        std::size_t init_ref = 0;
        for (std::size_t l = 0; l < a.locations.size(); ++l) {
            const Location& loc = a.locations[l];
            if (loc.name == a.initial) init_ref = l;
            oss << "    <location id=\"" << a.name << "_" << l << "\" x=\""
                << x << "\" y=\"0\">\n";
            oss << "      <name>" << xml_escape(loc.name) << "</name>\n";
            if (!loc.invariant.is_true())
                oss << "      <label kind=\"invariant\">"
                    << xml_escape(guard_text(loc.invariant)) << "</label>\n";
            oss << "    </location>\n";
            x += 150;
        }
        oss << "    <init ref=\"" << a.name << "_" << init_ref << "\"/>\n";

        auto location_index = [&a](const std::string& name) {
            for (std::size_t l = 0; l < a.locations.size(); ++l)
                if (a.locations[l].name == name) return l;
            return a.locations.size();
        };
        for (const auto& j : a.jumps) {
            oss << "    <transition>\n";
            oss << "      <source ref=\"" << a.name << "_"
                << location_index(j.source) << "\"/>\n";
            oss << "      <target ref=\"" << a.name << "_"
                << location_index(j.target) << "\"/>\n";
            if (!j.guard.is_true())
                oss << "      <label kind=\"guard\">"
                    << xml_escape(guard_text(j.guard)) << "</label>\n";
            if (j.sync.dir != SyncAction::Dir::none)
                oss << "      <label kind=\"synchronisation\">"
                    << xml_escape(sync_text(j.sync)) << "</label>\n";
            if (!j.resets.empty())
                oss << "      <label kind=\"assignment\">"
                    << xml_escape(assignment_text(j.resets)) << "</label>\n";
            oss << "    </transition>\n";
        }
        oss << "  </template>\n";
    }

    oss << "  <system>";
    std::ostringstream sys;
    sys << "system";
    for (std::size_t i = 0; i < m.automata.size(); ++i)
        sys << (i == 0 ? " " : ", ") << m.automata[i].name;
    sys << ";\n";
    oss << xml_escape(sys.str()) << "</system>\n";
    oss << "</nta>\n";
    return oss.str();
}

}  // namespace cta
