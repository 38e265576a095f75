#pragma once

#include "hypercox/rational.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

namespace hypercox {

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// An element of the totally real field Q(sqrt2, sqrt3, sqrt5), written over
/// the ordered basis {1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30}.
/// Coefficients are exact rationals in lowest terms, so equality is
/// coefficient-wise and elements hash/order canonically. Sign queries use the
/// real embedding that sends every radical to its positive root.
class FieldElement {
public:
    static constexpr int basis_size = 8;
    // Radicands of the basis elements, in basis order.
    static constexpr std::array<int, basis_size> radicand = {1, 2, 3, 5, 6, 10, 15, 30};

    FieldElement();                  // zero
    FieldElement(long v);            // NOLINT: implicit from integers is intended
    FieldElement(const Rat& v);      // NOLINT: implicit from rationals is intended

    /// Coefficient of sqrt(radicand[i]).
    const Rat& coeff(int i) const { return c_[i]; }
    Rat& coeff(int i) { return c_[i]; }

    /// c * sqrt(d) for d one of the eight radicands.
    static FieldElement radical_term(const Rat& c, int d);
    static FieldElement sqrt2() { return radical_term(1, 2); }
    static FieldElement sqrt3() { return radical_term(1, 3); }
    static FieldElement sqrt5() { return radical_term(1, 5); }
    static FieldElement sqrt6() { return radical_term(1, 6); }
    static FieldElement sqrt10() { return radical_term(1, 10); }
    static FieldElement sqrt15() { return radical_term(1, 15); }
    static FieldElement sqrt30() { return radical_term(1, 30); }

    bool is_zero() const;
    bool is_rational() const;  // only the constant coordinate may be nonzero

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    /// Exact division; throws std::domain_error on zero divisor. The quotient
    /// x solves the linear system M_o x = this, where M_o is the 8x8 rational
    /// multiplication-by-o matrix.
    FieldElement operator/(const FieldElement& o) const;

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Exact sign under the real embedding. The zero test is coefficient-wise;
    /// nonzero elements are decided by interval refinement (64 bits, doubling).
    Sign sign() const;
    bool is_positive() const { return sign() == Sign::positive; }
    bool is_negative() const { return sign() == Sign::negative; }

    /// The positive square root when it exists in the field. Tries r*sqrt(d)
    /// over the eight basis radicals first, then descends the quadratic tower
    /// Q < Q(sqrt2) < Q(sqrt2,sqrt3) < Q(sqrt2,sqrt3,sqrt5).
    /// Throws std::domain_error on negative input.
    std::optional<FieldElement> sqrt() const;

    /// Enclosing interval of width <= 2^-precision_bits (exact rational endpoints).
    QInterval approx(int precision_bits) const;
    double to_double() const;

    /// Total order: lexicographic on the coefficient vector. This is a
    /// canonical-form order for containers, not the embedding order.
    int cmp_coeffwise(const FieldElement& o) const;
    bool operator<(const FieldElement& o) const { return cmp_coeffwise(o) < 0; }

    /// Grammar: element ::= term (('+'|'-') term)*;
    /// term ::= rational ('*' radical)? | radical; rationals may be
    /// parenthesized, e.g. "(1/3)*sqrt15". Returns nullopt on syntax errors.
    static std::optional<FieldElement> parse(const std::string& text);
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& e);

private:
    std::array<Rat, basis_size> c_;
};

inline FieldElement operator*(const Rat& c, const FieldElement& e) { return FieldElement(c) * e; }
inline FieldElement operator*(long c, const FieldElement& e) { return FieldElement(c) * e; }

} // namespace hypercox
