#include <doctest.h>

#include <random>
#include <sstream>

#include "cta/format.hpp"
#include "cta/observers.hpp"
#include "cta/reduce.hpp"
#include "cta/templates.hpp"
#include "support/builders.hpp"
#include "support/random_models.hpp"
#include "support/sched_fixture.hpp"

using namespace cta;
using namespace cta::testing;

namespace {

const char* kRingDoc = R"({
  "automata": [
    {
      "clocks": ["t"],
      "initial": "a",
      "jumps": [
        {"from": "a", "resets": ["t := 0"], "to": "b"},
        {"from": "b", "resets": ["t := 0"], "to": "c"},
        {"from": "c", "resets": ["t := 0"], "to": "a"}
      ],
      "locations": [{"name": "a"}, {"name": "b"}, {"name": "c"}],
      "name": "R"
    }
  ]
})";

}  // namespace

TEST_CASE("a ring document parses to the expected model") {
    ParseResult r = parse_model(kRingDoc);
    REQUIRE(r.ok());
    CHECK(*r.model == ring_model());
}

TEST_CASE("guard strings follow the atom grammar") {
    Guard g;
    std::string error;
    REQUIRE(parse_guard("t > 500", g, error));
    REQUIRE(g.atoms.size() == 1);
    CHECK(g.atoms[0] == GuardAtom{"t", Rel::gt, 500});

    REQUIRE(parse_guard("a <= 3 && b == 0 && c >= 2", g, error));
    CHECK(g.atoms.size() == 3);

    REQUIRE(parse_guard("true", g, error));
    CHECK(g.is_true());
    REQUIRE(parse_guard("", g, error));
    CHECK(g.is_true());

    CHECK_FALSE(parse_guard("t => 3", g, error));
    CHECK(error.find("column 3") != std::string::npos);
    CHECK_FALSE(parse_guard("t > -1", g, error));
    CHECK_FALSE(parse_guard("t > 3 &&", g, error));
}

TEST_CASE("malformed relation surfaces as a positioned diagnostic") {
    std::string doc = kRingDoc;
    const auto at = doc.find("\"from\": \"a\"");
    doc.insert(at, "\"guard\": \"t => 3\", ");
    ParseResult r = parse_model(doc);
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].path == "automata[0].jumps[0].guard");
    CHECK(r.diagnostics[0].message.find("column") != std::string::npos);
}

TEST_CASE("json syntax errors carry line and column") {
    ParseResult r = parse_model("{\n  \"automata\": [,]\n}");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].line == 2);
}

TEST_CASE("validation problems are reported as diagnostics") {
    ParseResult r = parse_model(R"({
      "automata": [
        {"name": "A", "initial": "zz",
         "locations": [{"name": "a"}]}
      ]
    })");
    REQUIRE_FALSE(r.ok());
    CHECK_FALSE(r.model.has_value());
    CHECK(r.diagnostics[0].message.find("not declared") != std::string::npos);
}

TEST_CASE("serialize then parse is the identity on models") {
    std::vector<SystemModel> fixtures;
    fixtures.push_back(ring_model());
    fixtures.push_back(handshake_model());
    fixtures.push_back(forced_path_model(5));
    {
        SchedParams params;
        params.periodic.push_back(SchedTaskParams{"t0", 6, 2});
        params.events.push_back(SchedEventParams{"h0", 40, 4, 1});
        fixtures.push_back(build_sched_system(params));
        fixtures.push_back(build_annotated_sched(params).model);
    }
    std::mt19937 rng(77);
    for (int i = 0; i < 10; ++i) fixtures.push_back(random_oracle_model(rng));

    for (const auto& m : fixtures) {
        const std::string text = serialize_model(m);
        ParseResult r = parse_model(text);
        REQUIRE(r.ok());
        CHECK(*r.model == m);
        // Canonical text is a fixed point of parse-serialize.
        CHECK(serialize_model(*r.model) == text);
    }
}

TEST_CASE("serialization is byte-stable across calls") {
    SystemModel m = build_annotated_sched([] {
        SchedParams p;
        p.periodic.push_back(SchedTaskParams{"t0", 5, 1});
        p.events.push_back(SchedEventParams{"h0", 30, 3, 1});
        return p;
    }()).model;
    CHECK(serialize_model(m) == serialize_model(m));
}

TEST_CASE("annotated documents contain the monitor elements") {
    SystemModel m = ring_model();
    VerificationModel vm =
        gen_verification_model(m, {DeadlineRequirement{"R", "b", "c", 5}});
    const std::string doc = serialize_model(vm.model);
    CHECK(doc.find("dl_vio_b") != std::string::npos);
    CHECK(doc.find("dl_clk_b") != std::string::npos);
    CHECK(doc.find("dl_var_R_b") != std::string::npos);
}

TEST_CASE("reduction changes exactly one document line pair") {
    SystemModel m;
    m.channels.push_back(ChannelDecl{"ev", ChannelDecl::Kind::broadcast});
    m.automata.push_back(gen_event_agent(EventAgentSpec{"ev", 500}));
    m.aperiodic.push_back(AperiodicSpec{"ev", 500, 20});
    m.periodic.push_back(PeriodicSpec{"f", 50});

    auto [reduced, report] = apply_reduction(m);
    std::istringstream before(serialize_model(m));
    std::istringstream after(serialize_model(reduced));
    std::string a, b;
    int diff = 0;
    while (std::getline(before, a) && std::getline(after, b))
        if (a != b) ++diff;
    CHECK(diff == 2);   // the guard string and the spec's ltba
}
