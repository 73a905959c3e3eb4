#include <doctest.h>

#include <algorithm>
#include <random>

#include "cta/edit.hpp"
#include "cta/model.hpp"
#include "support/builders.hpp"
#include "support/random_models.hpp"

using namespace cta;
using namespace cta::testing;

TEST_CASE("well-formed handshake model validates cleanly") {
    CHECK(validate_system(handshake_model()).empty());
}

TEST_CASE("guard reading an undeclared clock is reported") {
    SystemModel m = ring_model();
    m.automata[0].jumps[0].guard.atoms.push_back(GuardAtom{"z", Rel::gt, 1});
    auto diags = validate_system(m);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message == "unresolved reference 'z'");
    CHECK(diags[0].automaton == "R");
}

TEST_CASE("variable assignment outside its domain is reported") {
    SystemModel m = ring_model();
    m.automata[0].vars.push_back(VarDecl{"v", 0, 0, 5});
    m.automata[0].jumps[0].resets.push_back(ResetAction::assign("v", 7));
    auto diags = validate_system(m);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("assignment outside domain") !=
          std::string::npos);
}

TEST_CASE("structural problems each get a diagnostic") {
    SystemModel m = ring_model();
    m.automata[0].initial = "nowhere";
    m.automata[0].clocks.push_back("t");            // duplicate clock
    m.automata[0].jumps[0].target = "ghost";
    m.automata[0].jumps[1].sync = SyncAction::emit("undeclared");
    auto diags = validate_system(m);
    CHECK(diags.size() == 4);
}

TEST_CASE("validation is order-insensitive and idempotent") {
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        SystemModel m = random_oracle_model(rng);
        // Break it a little so there is something to report.
        if (!m.automata[0].jumps.empty())
            m.automata[0].jumps[0].guard.atoms.push_back(
                GuardAtom{"zz", Rel::lt, 1});

        auto base = validate_system(m);
        auto again = validate_system(m);
        CHECK(base == again);

        SystemModel permuted = m;
        std::reverse(permuted.automata.begin(), permuted.automata.end());
        for (auto& a : permuted.automata)
            std::reverse(a.jumps.begin(), a.jumps.end());
        auto shuffled = validate_system(permuted);

        std::sort(base.begin(), base.end());
        std::sort(shuffled.begin(), shuffled.end());
        CHECK(base == shuffled);
    }
}

TEST_CASE("incoming jumps of a ring location") {
    TimedAutomaton a = ring_automaton();
    auto in = incoming_jumps(a, "b");
    REQUIRE(in.size() == 1);
    CHECK(in[0].source == "a");
}

TEST_CASE("incoming jumps include self-loops") {
    TimedAutomaton a = ring_automaton();
    a.jumps.push_back(Jump{"b", {}, SyncAction::silent(), "b", {}});
    auto in = incoming_jumps(a, "b");
    CHECK(in.size() == 2);
}

TEST_CASE("isolated location has no incoming jumps") {
    TimedAutomaton a = ring_automaton();
    a.locations.push_back(Location{"iso", {}});
    CHECK(incoming_jumps(a, "iso").empty());
    CHECK_THROWS_AS(incoming_jumps(a, "missing"), std::invalid_argument);
}

TEST_CASE("incoming jumps partition the jump set") {
    std::mt19937 rng(11);
    for (int i = 0; i < 20; ++i) {
        TimedAutomaton a = random_editable_automaton(rng);
        std::size_t total = 0;
        for (const auto& l : a.locations)
            total += incoming_jumps(a, l.name).size();
        CHECK(total == a.jumps.size());
    }
}

TEST_CASE("reachable locations on ring, chain, and sink") {
    TimedAutomaton ring = ring_automaton();
    auto r = reachable_locations(ring, "b");
    CHECK(r == std::vector<std::string>{"b", "c", "a"});

    TimedAutomaton chain;
    chain.name = "C";
    chain.initial = "a";
    chain.locations = {Location{"a", {}}, Location{"b", {}},
                       Location{"c", {}}, Location{"d", {}}};
    chain.jumps = {Jump{"a", {}, SyncAction::silent(), "b", {}},
                   Jump{"b", {}, SyncAction::silent(), "c", {}}};
    CHECK(reachable_locations(chain, "b") ==
          std::vector<std::string>{"b", "c"});
    CHECK(reachable_locations(chain, "d") == std::vector<std::string>{"d"});
    CHECK_THROWS_AS(reachable_locations(chain, "x"), std::invalid_argument);
}

TEST_CASE("reachability is reflexive and monotone under jump_add") {
    std::mt19937 rng(13);
    for (int i = 0; i < 30; ++i) {
        TimedAutomaton a = random_editable_automaton(rng);
        for (const auto& l : a.locations) {
            auto r = reachable_locations(a, l.name);
            CHECK(std::find(r.begin(), r.end(), l.name) != r.end());
        }

        SystemModel m;
        m.automata.push_back(a);
        EditAction action = random_valid_edit(m, rng);
        if (!std::holds_alternative<JumpAdd>(action)) continue;
        TimedAutomaton b = jump_add(a, std::get<JumpAdd>(action).jump);
        for (const auto& l : a.locations) {
            auto before = reachable_locations(a, l.name);
            auto after = reachable_locations(b, l.name);
            for (const auto& q : before)
                CHECK(std::find(after.begin(), after.end(), q) != after.end());
        }
    }
}

TEST_CASE("normalized comparison ignores declaration order") {
    TimedAutomaton a = ring_automaton();
    TimedAutomaton b = a;
    std::reverse(b.jumps.begin(), b.jumps.end());
    std::reverse(b.locations.begin(), b.locations.end());
    CHECK(a != b);
    CHECK(equivalent(a, b));
}
