#pragma once

#include "starprod/lie_algebra.hpp"

#include <map>

namespace starprod {

// A word in the basis generators, letters are 0-based variable indices.
// Normal form = nondecreasing letters, matching the ordered-monomial basis
// of the enveloping algebra.
using Word = std::vector<int>;

struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Element of the universal enveloping algebra written in the normal-form
// word basis. Invariant: every stored word is nondecreasing, no zero
// coefficients.
class PBWElement {
public:
    using Terms = std::map<Word, Rat, WordLess>;

    PBWElement() = default;
    explicit PBWElement(VarSpacePtr space);
    static PBWElement one(VarSpacePtr space);

    const VarSpacePtr& space() const { return m_space; }
    const Terms& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    int top_length() const; // length of the longest word, kNegInfDeg when zero

    PBWElement& add_term(const Word& w, const Rat& coef);
    PBWElement& operator+=(const PBWElement& rhs);
    PBWElement& operator-=(const PBWElement& rhs);
    PBWElement& operator*=(const Rat& scalar);
    bool operator==(const PBWElement& rhs) const;
    bool operator!=(const PBWElement& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    VarSpacePtr m_space;
    Terms m_terms;
};

// Computation workspace bound to one Lie algebra. Owns the memo caches for
// word reduction, symmetrization, and the bilinear graded products, which
// make repeated cochain evaluation cheap.
class GuttWorkspace {
public:
    explicit GuttWorkspace(const LieAlgebra& L);

    const LieAlgebra& algebra() const { return *m_L; }
    const VarSpacePtr& space() const { return m_L->space(); }

    // Normal form of an arbitrary word, rewriting descents X_i X_j (i > j)
    // into X_j X_i + [X_i, X_j]. Terminates by the (length, inversions)
    // measure; triangular structure constants keep it finite.
    const PBWElement& reduce_word(const Word& w);

    // Product in the enveloping algebra of two normal-form elements.
    PBWElement uea_mul(const PBWElement& u, const PBWElement& v);

    // Symmetrization S(g) -> U(g): monomials go to averaged products over
    // all distinct letter orders.
    const PBWElement& symmetrize_monomial(const Expvec& e);
    PBWElement symmetrize(const Polynomial& p);

    // Splits u into sum_k sigma(P_k) with P_k homogeneous of degree k by
    // peeling top word length; returns the P_k.
    std::map<int, Polynomial> graded_decompose(const PBWElement& u);
    Polynomial sigma_inverse(const PBWElement& u);

    // Bilinear ladder components on monomials: for C_n(u, v) with u, v of
    // degrees r, s, the word-length (r+s-n) slice of sigma(u) sigma(v),
    // mapped back to S(g) and scaled by 2^n. Cached per monomial pair.
    const std::map<int, Polynomial>& gutt_components(const Expvec& eu, const Expvec& ev);
    Polynomial gutt_cochain(int n, const Polynomial& u, const Polynomial& v);

    size_t cached_pairs() const { return m_pair.size(); }

private:
    const LieAlgebra* m_L;
    std::map<Word, PBWElement, WordLess> m_reduce;
    std::map<Expvec, PBWElement> m_sym;
    std::map<std::pair<Expvec, Expvec>, std::map<int, Polynomial>> m_pair;
};

} // namespace starprod
