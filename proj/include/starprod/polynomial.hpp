#pragma once

#include "starprod/rational.hpp"
#include "starprod/varspace.hpp"

#include <limits>
#include <map>
#include <vector>

namespace starprod {

// Exponent vector, always of length space->dim().
using Expvec = std::vector<int>;

// Degree of the zero polynomial.
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min();

int expvec_total(const Expvec& e);

// Graded lexicographic order: lower total degree first, ties broken
// lexicographically with x1 most significant. The canonical term order for
// storage, printing, and triangular eliminations.
struct GrlexLess {
    bool operator()(const Expvec& a, const Expvec& b) const;
};

// Multivariate polynomial over the rationals with exact coefficients.
// Invariant: no stored term has a zero coefficient.
class Polynomial {
public:
    using Terms = std::map<Expvec, Rat, GrlexLess>;

    Polynomial() = default; // invalid placeholder, no space
    explicit Polynomial(VarSpacePtr space);
    Polynomial(VarSpacePtr space, const Rat& constant);

    static Polynomial monomial(VarSpacePtr space, Expvec exponents, Rat coef = Rat(1));
    static Polynomial variable(VarSpacePtr space, int var_index, Rat coef = Rat(1));

    const VarSpacePtr& space() const { return m_space; }
    const Terms& terms() const { return m_terms; }

    bool is_zero() const { return m_terms.empty(); }
    bool is_constant() const;
    // The coefficient of the constant term (0 when absent).
    Rat constant_value() const;
    Rat coefficient(const Expvec& exponents) const;

    int degree() const;            // kNegInfDeg for zero
    int degree_in(int var) const;  // kNegInfDeg for zero
    bool is_homogeneous() const;   // zero counts as homogeneous
    Polynomial homogeneous_component(int d) const;
    std::map<int, Polynomial> homogeneous_components() const;

    Polynomial& add_term(const Expvec& exponents, const Rat& coef);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Rat& scalar);
    Polynomial& operator/=(const Rat& scalar);
    Polynomial& operator*=(const Polynomial& rhs);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rat& s) { return a *= s; }
    friend Polynomial operator*(const Rat& s, Polynomial a) { return a *= s; }
    friend Polynomial operator/(Polynomial a, const Rat& s) { return a /= s; }

    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    Polynomial pow(int n) const;
    Polynomial derivative(int var) const;
    Polynomial derivative(const Expvec& multi) const;

    // Leading term in graded lex order; only valid on nonzero polynomials.
    const Expvec& leading_monomial() const;
    const Rat& leading_coefficient() const;

    // The positive rational s such that s * this has coprime integer
    // coefficients and positive leading coefficient. Only for nonzero input.
    Rat primitive_scale() const;

    // Terms printed in descending graded lex order, e.g. "x1*x5 - x2*x4 + 1/2*x3^2".
    std::string str() const;

private:
    void check_space(const Polynomial& rhs, const char* where) const;

    VarSpacePtr m_space;
    Terms m_terms;
};

// Substitution with polynomial images (images[i] replaces variable i).
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images);

} // namespace starprod
