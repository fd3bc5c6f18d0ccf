#pragma once

#include "starprod/coboundary.hpp"
#include "starprod/pbw.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace starprod {

// One bilinear cochain of a deformation ladder: an exact evaluator on
// polynomial pairs, optionally backed by a finite operator form.
class BilinearCochain {
public:
    using Fn = std::function<Polynomial(const Polynomial&, const Polynomial&)>;

    BilinearCochain() = default; // invalid placeholder
    explicit BilinearCochain(Fn fn) : m_fn(std::move(fn)) {}
    explicit BilinearCochain(MultiDiffOperator op); // polynomial coefficients required

    Polynomial operator()(const Polynomial& u, const Polynomial& v) const;
    const std::optional<MultiDiffOperator>& op() const { return m_op; }

private:
    Fn m_fn;
    std::optional<MultiDiffOperator> m_op;
};

// The cochains C_0..C_N of a deformation of the pointwise product. By
// construction entry 0 is multiplication and entry 1 is the Poisson bracket;
// factories guarantee this and the test suite asserts it on samples.
class CochainLadder {
public:
    CochainLadder(VarSpacePtr space, std::vector<BilinearCochain> entries);

    const VarSpacePtr& space() const { return m_space; }
    int top() const { return static_cast<int>(m_entries.size()) - 1; }
    bool has(int n) const { return n >= 0 && n <= top(); }

    const BilinearCochain& entry(int n) const;
    Polynomial apply(int n, const Polynomial& u, const Polynomial& v) const;

    // Replace one cochain (n <= top) or append the next one (n == top + 1).
    void set_entry(int n, BilinearCochain c);

private:
    VarSpacePtr m_space;
    std::vector<BilinearCochain> m_entries;
};

// Ladder of the symmetrization-transported product: entry n evaluates the
// order-n cochain through the shared workspace caches.
CochainLadder make_gutt_ladder(std::shared_ptr<GuttWorkspace> ws, int N);

// Truncated product output: polynomial coefficients of nu^0..nu^N; trailing
// zeros are kept so the truncation order stays visible.
class FormalSeries {
public:
    FormalSeries(VarSpacePtr space, std::vector<Polynomial> coefficients);

    const VarSpacePtr& space() const { return m_space; }
    int order() const { return static_cast<int>(m_coefficients.size()) - 1; }
    const Polynomial& coefficient(int n) const;
    const std::vector<Polynomial>& coefficients() const { return m_coefficients; }

    // "x4*x5 + x3*v + 0*v^2" — the formal parameter prints as v; composite
    // coefficients are parenthesized.
    std::string str() const;

private:
    VarSpacePtr m_space;
    std::vector<Polynomial> m_coefficients;
};

// u * v through order N: coefficient of nu^n is ladder entry n applied to
// (u, v). Throws std::invalid_argument when the ladder stops before N.
FormalSeries star_truncated(const CochainLadder& ladder, const Polynomial& u, const Polynomial& v,
                            int N);

// Order-k residual of associativity. With the ladder defined through order k
// this is the full condition
//
//   sum_{r+s=k} C_r(C_s(u,v),w) - C_r(u,C_s(v,w))
//
// (zero iff the product is associative at order k). With the ladder defined
// only through k-1 the r,s >= 1 part is returned: the cocycle that the next
// cochain must cobound, delta(C_k) = E_k.
Polynomial associator_defect(const CochainLadder& ladder, int k, const Polynomial& u,
                             const Polynomial& v, const Polynomial& w);

// Conjugate the ladder by H = Id + sum_k T_k nu^k through order N: the new
// cochains are C'_n(u,v) = sum_{i+a+b+c=n} S_i(C_c(T_a u, T_b v)) with
// H^{-1} = sum S_i nu^i given by S_0 = Id, S_n = -sum_{i<n} S_i T_{n-i}.
// T_k entries must be unary and vanish on constants.
CochainLadder gauge_transform(const CochainLadder& ladder,
                              const std::map<int, MultiDiffOperator>& T_series, int N);

} // namespace starprod
