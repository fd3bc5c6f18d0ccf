#pragma once

#include "starprod/rational_function.hpp"

#include <functional>
#include <map>
#include <vector>

namespace starprod {

// Derivative pattern of one term: one multi-index per argument slot.
using IdxTuple = std::vector<Expvec>;

int idx_total_order(const IdxTuple& t);

struct IdxTupleLess {
    bool operator()(const IdxTuple& a, const IdxTuple& b) const;
};

// A finite sum  sum_t coef_t(x) * d^(a_1) u_1 ... d^(a_s) u_s  with rational
// function coefficients: an s-linear multi-differential operator. Terms are
// stored canonically merged; no zero coefficients.
class MultiDiffOperator {
public:
    using Terms = std::map<IdxTuple, RationalFunction, IdxTupleLess>;

    MultiDiffOperator() = default; // invalid placeholder
    MultiDiffOperator(VarSpacePtr space, int arity);

    const VarSpacePtr& space() const { return m_space; }
    int arity() const { return m_arity; }
    const Terms& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    size_t term_count() const { return m_terms.size(); }

    // Highest total derivative order over all terms, kNegInfDeg when zero.
    int order() const;

    MultiDiffOperator& add_term(const IdxTuple& idx, RationalFunction coef);
    MultiDiffOperator& add_term(const IdxTuple& idx, Polynomial coef);

    MultiDiffOperator operator-() const;
    MultiDiffOperator& operator+=(const MultiDiffOperator& rhs);
    MultiDiffOperator& operator-=(const MultiDiffOperator& rhs);
    MultiDiffOperator& operator*=(const Rat& scalar);
    friend MultiDiffOperator operator+(MultiDiffOperator a, const MultiDiffOperator& b) { return a += b; }
    friend MultiDiffOperator operator-(MultiDiffOperator a, const MultiDiffOperator& b) { return a -= b; }
    friend MultiDiffOperator operator*(MultiDiffOperator a, const Rat& s) { return a *= s; }
    friend MultiDiffOperator operator*(const Rat& s, MultiDiffOperator a) { return a *= s; }

    bool operator==(const MultiDiffOperator& rhs) const;
    bool operator!=(const MultiDiffOperator& rhs) const { return !(*this == rhs); }

    // Polynomial fast path; requires every coefficient to be a polynomial.
    Polynomial apply(const std::vector<Polynomial>& args) const;
    // General path with quotient-rule derivatives.
    RationalFunction apply(const std::vector<RationalFunction>& args) const;

    std::string str() const;

private:
    VarSpacePtr m_space;
    int m_arity = 0;
    Terms m_terms;
};

// A formal series sum_(n >= nmin) A_n of operators of one arity, given by a
// generator for the n-th term plus a truncation rule: for concrete inputs,
// bound(args) returns the largest n that can act nonzero, so evaluation is a
// finite sum. Terms are memoized.
class OperatorSeries {
public:
    using Generator = std::function<MultiDiffOperator(int)>;
    using Bound = std::function<int(const std::vector<RationalFunction>&)>;

    OperatorSeries(VarSpacePtr space, int arity, int nmin, Generator gen, Bound bound);

    const VarSpacePtr& space() const { return m_space; }
    int arity() const { return m_arity; }
    int nmin() const { return m_nmin; }

    const MultiDiffOperator& term(int n) const;
    Polynomial apply(const std::vector<Polynomial>& args) const;
    RationalFunction apply(const std::vector<RationalFunction>& args) const;

private:
    VarSpacePtr m_space;
    int m_arity;
    int m_nmin;
    Generator m_gen;
    Bound m_bound;
    mutable std::map<int, MultiDiffOperator> m_memo;
};

// Operator text format, one term per line:
//
//   arity 2
//   term x1^2/6 ; [3,3] | [4,4]
//
// The bracket lists are 1-based variable indices, one per derivative, so
// [3,3] means the second derivative in the third variable; [] is the
// undifferentiated slot. Coefficients may be rational expressions.
MultiDiffOperator parse_operator_text(const std::string& text, const VarSpacePtr& space);
std::string operator_text(const MultiDiffOperator& op);

} // namespace starprod
