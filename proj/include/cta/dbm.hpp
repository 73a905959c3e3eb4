// dbm.hpp — difference-bound matrices over clocks {x0 (reference), x1..xk}
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cta/model.hpp"

namespace cta {

/// Matrix entry: either infinity or (relation in {<, <=}, value). Encoded
/// as 2*value + 1 for <= and 2*value for <, so tighter bounds compare
/// smaller and min-plus addition stays branch-free.
struct Bound {
    int32_t raw;

    static Bound le(int value) { return Bound{2 * value + 1}; }
    static Bound lt(int value) { return Bound{2 * value}; }
    static Bound inf();

    bool is_inf() const;
    bool is_strict() const { return (raw & 1) == 0; }
    int value() const { return (raw - (raw & 1)) / 2; }

    Bound operator+(Bound other) const;
    auto operator<=>(const Bound&) const = default;

    std::string to_string() const;
};

/// Zone representation. Constructed as the zero zone (all clocks equal 0)
/// and kept canonical by every exported operation.
class Dbm {
public:
    Dbm() : Dbm(0) {}
    explicit Dbm(std::size_t clock_count);

    std::size_t dim() const { return dim_; }           // clocks + reference
    std::size_t clock_count() const { return dim_ - 1; }

    Bound at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Bound b);

    bool empty() const;

    /// All-pairs shortest-path closure. Emptiness shows up as a negative
    /// diagonal, which is left in place for inspection.
    void canonicalize();
    bool is_canonical() const;

    /// Removes the upper bounds of all clocks, preserving differences.
    void elapse();

    /// Intersects with `clock ~ value` and restores canonical form.
    /// Equality expands to the <= and >= pair.
    void constrain(std::size_t clock, Rel rel, int value);

    /// clock := 0
    void reset(std::size_t clock);

    /// Classic per-clock maximal-constant extrapolation; `max_const[i]` is
    /// the largest constant compared against clock i (index 0 unused).
    void extrapolate(std::span<const int> max_const);

    /// this ⊇ other (zone inclusion on canonical forms).
    bool includes(const Dbm& other) const;

    bool operator==(const Dbm&) const = default;

    std::string to_string() const;

    std::span<const int32_t> raw() const { return entries_; }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        return i * dim_ + j;
    }
    void close_after(std::size_t x, std::size_t y);

    std::size_t dim_;
    std::vector<int32_t> entries_;
};

// Pure wrappers over the mutating operations, convenient in tests.
Dbm canonicalized(Dbm d);
Dbm elapsed(Dbm d);                       // throws on empty input
Dbm constrained(Dbm d, std::size_t clock, Rel rel, int value);
Dbm reset_clock(Dbm d, std::size_t clock);
Dbm extrapolated(Dbm d, std::span<const int> max_const);

}  // namespace cta
