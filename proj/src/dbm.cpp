#include "cta/dbm.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cta {

namespace {
constexpr int32_t kInf = std::numeric_limits<int32_t>::max();
}

Bound Bound::inf() { return Bound{kInf}; }
bool Bound::is_inf() const { return raw == kInf; }

Bound Bound::operator+(Bound other) const {
    if (is_inf() || other.is_inf()) return inf();
    return Bound{raw + other.raw - ((raw | other.raw) & 1)};
}

std::string Bound::to_string() const {
    if (is_inf()) return "inf";
    return std::string(is_strict() ? "<" : "<=") + std::to_string(value());
}

Dbm::Dbm(std::size_t clock_count)
    : dim_(clock_count + 1), entries_(dim_ * dim_, Bound::le(0).raw) {}

Bound Dbm::at(std::size_t i, std::size_t j) const {
    return Bound{entries_[index(i, j)]};
}

void Dbm::set(std::size_t i, std::size_t j, Bound b) {
    entries_[index(i, j)] = b.raw;
}

bool Dbm::empty() const {
    for (std::size_t i = 0; i < dim_; ++i)
        if (at(i, i) < Bound::le(0)) return true;
    return false;
}

void Dbm::canonicalize() {
    for (std::size_t m = 0; m < dim_; ++m) {
        for (std::size_t i = 0; i < dim_; ++i) {
            const Bound im = at(i, m);
            if (im.is_inf()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                const Bound candidate = im + at(m, j);
                if (candidate < at(i, j)) set(i, j, candidate);
            }
        }
    }
}

bool Dbm::is_canonical() const {
    for (std::size_t m = 0; m < dim_; ++m)
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                if (at(i, m) + at(m, j) < at(i, j)) return false;
    return true;
}

void Dbm::elapse() {
    if (empty()) throw std::invalid_argument("elapse on empty zone");
    for (std::size_t i = 1; i < dim_; ++i) set(i, 0, Bound::inf());
}

void Dbm::close_after(std::size_t x, std::size_t y) {
    // Re-close along the single tightened edge (x, y).
    for (std::size_t i = 0; i < dim_; ++i) {
        const Bound ix = at(i, x);
        if (ix.is_inf()) continue;
        const Bound through = ix + at(x, y);
        if (through.is_inf()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            const Bound candidate = through + at(y, j);
            if (candidate < at(i, j)) set(i, j, candidate);
        }
    }
}

void Dbm::constrain(std::size_t clock, Rel rel, int value) {
    if (clock == 0 || clock >= dim_)
        throw std::invalid_argument("unknown clock index " +
                                    std::to_string(clock));
    auto tighten = [&](std::size_t i, std::size_t j, Bound b) {
        if (b < at(i, j)) {
            set(i, j, b);
            close_after(i, j);
        }
    };
    switch (rel) {
        case Rel::lt: tighten(clock, 0, Bound::lt(value)); break;
        case Rel::le: tighten(clock, 0, Bound::le(value)); break;
        case Rel::gt: tighten(0, clock, Bound::lt(-value)); break;
        case Rel::ge: tighten(0, clock, Bound::le(-value)); break;
        case Rel::eq:
            tighten(clock, 0, Bound::le(value));
            tighten(0, clock, Bound::le(-value));
            break;
    }
}

void Dbm::reset(std::size_t clock) {
    if (clock == 0 || clock >= dim_)
        throw std::invalid_argument("unknown clock index " +
                                    std::to_string(clock));
    if (empty()) throw std::invalid_argument("reset on empty zone");
    for (std::size_t j = 0; j < dim_; ++j) {
        set(clock, j, at(0, j));
        set(j, clock, at(j, 0));
    }
    set(clock, clock, Bound::le(0));
}

void Dbm::extrapolate(std::span<const int> max_const) {
    if (max_const.size() != dim_)
        throw std::invalid_argument("max-constant table has wrong size");
    bool changed = false;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            const Bound b = at(i, j);
            if (i != 0 && !b.is_inf() && b > Bound::le(max_const[i])) {
                set(i, j, Bound::inf());
                changed = true;
            } else if (b < Bound::lt(-max_const[j])) {
                set(i, j, Bound::lt(-max_const[j]));
                changed = true;
            }
        }
    }
    if (changed) canonicalize();
}

bool Dbm::includes(const Dbm& other) const {
    for (std::size_t i = 0; i < dim_ * dim_; ++i)
        if (entries_[i] < other.entries_[i]) return false;
    return true;
}

std::string Dbm::to_string() const {
    std::ostringstream oss;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            if (j > 0) oss << ' ';
            oss << at(i, j).to_string();
        }
        oss << '\n';
    }
    return oss.str();
}

Dbm canonicalized(Dbm d) {
    d.canonicalize();
    return d;
}

Dbm elapsed(Dbm d) {
    d.elapse();
    return d;
}

Dbm constrained(Dbm d, std::size_t clock, Rel rel, int value) {
    d.constrain(clock, rel, value);
    return d;
}

Dbm reset_clock(Dbm d, std::size_t clock) {
    d.reset(clock);
    return d;
}

Dbm extrapolated(Dbm d, std::span<const int> max_const) {
    d.extrapolate(max_const);
    return d;
}

}  // namespace cta
