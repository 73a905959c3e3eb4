#include <doctest.h>

#include <array>

#include "cta/dbm.hpp"

using namespace cta;

namespace {

Dbm universal(std::size_t clocks) {
    Dbm d(clocks);
    d.elapse();   // zero zone has no upper bounds removed yet
    return d;
}

}  // namespace

TEST_CASE("canonicalization tightens through intermediate clocks") {
    Dbm d(2);
    // Start from the unconstrained positive quadrant.
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 0; j <= 2; ++j)
            if (i != j) d.set(i, j, Bound::inf());
    d.set(1, 0, Bound::le(10));
    d.set(1, 2, Bound::le(2));
    d.set(2, 0, Bound::le(3));
    d.canonicalize();
    CHECK(d.at(1, 0) == Bound::le(5));
    CHECK_FALSE(d.empty());

    Dbm again = d;
    again.canonicalize();
    CHECK(again == d);
}

TEST_CASE("contradictory bounds flip the diagonal negative") {
    Dbm d(1);
    d.set(0, 1, Bound::le(-3));   // x1 >= 3
    d.set(1, 0, Bound::lt(2));    // x1 < 2
    d.canonicalize();
    CHECK(d.empty());
}

TEST_CASE("elapse removes upper bounds and keeps differences") {
    Dbm zero(2);
    Dbm up = elapsed(zero);
    CHECK(up.at(1, 0).is_inf());
    CHECK(up.at(2, 0).is_inf());
    CHECK(up.at(0, 1) == Bound::le(0));
    CHECK(up.at(1, 2) == Bound::le(0));
    CHECK(up.at(2, 1) == Bound::le(0));

    Dbm band = constrained(constrained(universal(1), 1, Rel::ge, 1), 1,
                           Rel::le, 2);
    Dbm later = elapsed(band);
    CHECK(later.at(0, 1) == Bound::le(-1));
    CHECK(later.at(1, 0).is_inf());

    // x1 - x2 == 1 survives time elapse.
    Dbm pair = elapsed(Dbm(2));
    pair.constrain(1, Rel::eq, 1);
    pair.reset(2);
    pair.elapse();
    CHECK(pair.at(1, 2) == Bound::le(1));
    CHECK(pair.at(2, 1) == Bound::le(-1));

    Dbm empty(1);
    empty.set(0, 1, Bound::le(-3));
    empty.set(1, 0, Bound::lt(2));
    empty.canonicalize();
    CHECK_THROWS_AS(empty.elapse(), std::invalid_argument);
}

TEST_CASE("constrain intersects with one half-space") {
    Dbm d = elapsed(Dbm(1));
    d.constrain(1, Rel::gt, 3);
    CHECK(d.at(0, 1) == Bound::lt(-3));
    CHECK(d.at(1, 0).is_inf());

    d.constrain(1, Rel::le, 5);
    CHECK(d.at(1, 0) == Bound::le(5));
    CHECK_FALSE(d.empty());

    Dbm zero(1);
    zero.constrain(1, Rel::gt, 0);
    CHECK(zero.empty());
}

TEST_CASE("reset pins a clock and keeps the rest") {
    Dbm d = elapsed(Dbm(1));
    d.constrain(1, Rel::gt, 3);
    d.constrain(1, Rel::le, 5);
    d.reset(1);
    CHECK(d.at(1, 0) == Bound::le(0));
    CHECK(d.at(0, 1) == Bound::le(0));

    Dbm two = elapsed(Dbm(2));
    two.constrain(1, Rel::eq, 2);   // both clocks equal: x2 pinned too
    two.reset(1);
    CHECK(two.at(1, 0) == Bound::le(0));
    CHECK(two.at(2, 0) == Bound::le(2));
    CHECK(two.at(0, 2) == Bound::le(-2));

    CHECK_THROWS_AS(two.reset(9), std::invalid_argument);
}

TEST_CASE("reset-elapse-constrain reproduces the event-agent cycle zone") {
    const int gap = 3;
    Dbm d = elapsed(Dbm(1));
    d.constrain(1, Rel::gt, gap);
    d.reset(1);
    d.elapse();
    d.constrain(1, Rel::gt, gap);

    Dbm expected = elapsed(Dbm(1));
    expected.constrain(1, Rel::gt, gap);
    CHECK(d == expected);
}

TEST_CASE("extrapolation relaxes bounds beyond the maximal constants") {
    std::array<int, 2> max_const{0, 5};

    Dbm d(1);
    d.set(1, 0, Bound::le(12));
    d.set(0, 1, Bound::le(0));
    d.canonicalize();
    d.extrapolate(max_const);
    CHECK(d.at(1, 0).is_inf());

    Dbm low(1);
    low.set(0, 1, Bound::le(-9));   // x1 >= 9, beyond M = 5
    low.set(1, 0, Bound::inf());
    low.canonicalize();
    low.extrapolate(max_const);
    CHECK(low.at(0, 1) == Bound::lt(-5));

    Dbm inside = constrained(constrained(universal(1), 1, Rel::ge, 1), 1,
                             Rel::le, 4);
    Dbm untouched = inside;
    untouched.extrapolate(max_const);
    CHECK(untouched == inside);
}

TEST_CASE("zone inclusion is a partial order") {
    Dbm small = constrained(constrained(universal(1), 1, Rel::ge, 2), 1,
                            Rel::le, 3);
    Dbm big = constrained(constrained(universal(1), 1, Rel::ge, 1), 1,
                          Rel::le, 5);
    CHECK(big.includes(small));
    CHECK_FALSE(small.includes(big));
    CHECK(big.includes(big));

    Dbm other = constrained(universal(1), 1, Rel::ge, 4);
    CHECK_FALSE(big.includes(other));
    CHECK_FALSE(other.includes(big));
}

TEST_CASE("bound arithmetic follows the min-plus order") {
    CHECK(Bound::le(2) + Bound::le(3) == Bound::le(5));
    CHECK(Bound::lt(2) + Bound::le(3) == Bound::lt(5));
    CHECK(Bound::lt(2) + Bound::lt(3) == Bound::lt(5));
    CHECK((Bound::inf() + Bound::le(1)).is_inf());
    CHECK(Bound::lt(4) < Bound::le(4));
    CHECK(Bound::le(4) < Bound::lt(5));
}
