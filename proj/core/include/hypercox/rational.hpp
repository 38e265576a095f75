#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace hypercox {

using Rat = mpq_class;
using Int = mpz_class;

/// Closed interval with exact rational endpoints.
struct QInterval {
    Rat lo, hi;

    Rat width() const { return hi - lo; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    QInterval operator*(const Rat& c) const {
        if (sgn(c) >= 0) return {lo * c, hi * c};
        return {hi * c, lo * c};
    }
};

std::string rat_to_string(const Rat& q);

// Accepts "n" or "n/d" with an optional leading sign; nullopt on garbage.
std::optional<Rat> rat_from_string(const std::string& s);

/// True iff q is the square of a rational; *root gets the nonnegative root.
bool rat_is_square(const Rat& q, Rat* root = nullptr);

// Midpoint of the interval printed with `digits` decimals, plus a radius
// bound, e.g. "9.870 +/- 0.001". Used for numeric evidence in reports.
std::string interval_to_decimal(const QInterval& iv, int digits);

} // namespace hypercox
