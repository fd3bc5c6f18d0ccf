#pragma once

#include "starprod/polynomial.hpp"

#include <optional>

namespace starprod {

// Quotient of A by B when the division is exact, nullopt otherwise.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

// Exact division; throws std::logic_error when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

// Greatest common divisor over Q[x], computed by content and primitive part
// recursion on the main variable with a primitive polynomial remainder
// sequence. Normalized to coprime integer coefficients with positive leading
// coefficient; gcd of two zeros is zero, gcd with any nonzero constant is 1.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Reduced fraction of polynomials. Invariants: the denominator is nonzero,
// shares no factor with the numerator, and has coprime integer coefficients
// with positive leading coefficient; zero is stored as 0/1, so a constant
// denominator is always exactly 1.
class RationalFunction {
public:
    RationalFunction() = default; // invalid placeholder
    explicit RationalFunction(Polynomial num);
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction zero(const VarSpacePtr& space);
    static RationalFunction constant(const VarSpacePtr& space, const Rat& value);

    const Polynomial& num() const { return m_num; }
    const Polynomial& den() const { return m_den; }
    const VarSpacePtr& space() const { return m_num.space(); }

    bool is_zero() const { return m_num.is_zero(); }
    bool is_polynomial() const { return m_den.is_constant(); }
    const Polynomial& as_polynomial() const; // throws unless is_polynomial()

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& rhs);
    RationalFunction& operator-=(const RationalFunction& rhs);
    RationalFunction& operator*=(const RationalFunction& rhs);
    RationalFunction& operator/=(const RationalFunction& rhs); // throws on zero divisor
    RationalFunction& operator*=(const Rat& s);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend RationalFunction operator*(RationalFunction a, const Rat& s) { return a *= s; }
    friend RationalFunction operator*(const Rat& s, RationalFunction a) { return a *= s; }

    bool operator==(const RationalFunction& rhs) const;
    bool operator!=(const RationalFunction& rhs) const { return !(*this == rhs); }

    RationalFunction pow(int n) const; // negative n inverts; throws on 0^negative
    RationalFunction derivative(int var) const;

    // num degree minus den degree; kNegInfDeg for zero. For a homogeneous
    // fraction this is its degree as a rational identity.
    int degree() const;
    bool is_homogeneous() const;

    std::string str() const;

private:
    void reduce();

    Polynomial m_num, m_den;
};

// Substitution with rational images; throws std::domain_error when a
// denominator substitutes to zero.
RationalFunction substitute(const Polynomial& p, const std::vector<RationalFunction>& images);
RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& images);

} // namespace starprod
