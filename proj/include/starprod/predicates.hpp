#pragma once

#include "starprod/chart.hpp"
#include "starprod/coboundary.hpp"
#include "starprod/ladder.hpp"
#include "starprod/lie_algebra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace starprod {

// Failure evidence: the argument tuple and the nonzero discrepancy it
// produced, both printed exactly.
struct CheckWitness {
    std::vector<std::string> inputs;
    std::string discrepancy;
};

// Outcome of one finite-certificate check. The grid string records which
// family of inputs stands in for the universally quantified definition.
struct CheckReport {
    std::string name;
    std::string grid;
    int degree_bound = 0;
    bool pass = true;
    std::optional<CheckWitness> witness;

    std::string str() const;
};

// An s-linear map over the x-space with rational-function values; grids feed
// it monomials. The wrapper for polynomial-valued evaluators converts at the
// boundary.
struct Cochain {
    int arity = 2;
    CochainFn fn;
};

Cochain cochain_from(const MultiDiffOperator& op);
Cochain cochain_from(int arity, PolyCochainFn fn);
Cochain cochain_from(const BilinearCochain& c);

// Visit every arity-tuple of exponent vectors with total degree <= bound;
// return false from the visitor to stop early.
void for_each_monomial_tuple(int dim, int arity, int bound,
                             const std::function<bool(const std::vector<Expvec>&)>& visit);

// Degree grading: C maps monomial tuples of degrees d_1..d_s into the
// homogeneous component of degree d_1+...+d_s − n (or to zero). Checked on
// all monomial tuples of total degree <= degree_bound.
CheckReport is_homogeneous(const Cochain& C, const VarSpacePtr& space, int n, int degree_bound,
                           const std::string& subject);

// Tangentiality: C vanishes when any slot is constant, and multiplication by
// every declared invariant of L passes through every slot:
// Q·C(u_1,...,u_s) = C(u_1,...,Q·u_l,...,u_s). Checked on all monomial
// tuples of total degree <= degree_bound. Throws when L declares no
// invariants.
CheckReport is_tangential(const LieAlgebra& L, const Cochain& C, int degree_bound,
                          const std::string& subject);

// An s-linear map on the localized algebra, expressed in chart coordinates:
// arguments and values are rational functions over the chart space.
using ChartCochainFn = std::function<RationalFunction(const std::vector<RationalFunction>&)>;

// Three routes into chart coordinates:
//  - an operator already written in chart coordinates applies directly;
ChartCochainFn chart_map_from_operator(const MultiDiffOperator& op);
//  - an x-space operator with rational coefficients conjugates by pulling
//    arguments back, applying, and pushing the value forward;
ChartCochainFn chart_map_via_pullback(const MultiDiffOperator& op, const Chart& chart);
//  - a tangential black box on polynomials extends to invariant-denominator
//    fractions by F(u/Q) = F(u)/Q slot by slot, then transports as above.
//    Throws std::domain_error if a pulled-back denominator is not invariant.
ChartCochainFn chart_map_localized(const LieAlgebra& L, const Chart& chart, int arity,
                                   PolyCochainFn fn);

// p-degree correctness: ||C(f_1,...,f_s)|| <= ||f_1|| + ... + ||f_s|| − n
// where ||.|| is the degree in the chart's p variables. Checked on all
// monomial tuples in the chart variables of total degree <= degree_bound
// (all such monomials pull back into the localized algebra).
CheckReport is_correct(const Chart& chart, const ChartCochainFn& C, int arity, int n,
                       int degree_bound, const std::string& subject);

} // namespace starprod
