#pragma once

#include "starprod/lie_algebra.hpp"

namespace starprod {

// A birational coordinate change on (a dense open set of) the dual:
// canonical pairs p_i, q_i plus central coordinates lambda_k. Chart variable
// roles are read off the name prefix: "p<digits>", "q<digits>",
// "lambda<digits>".
struct Chart {
    VarSpacePtr xspace;
    VarSpacePtr cspace;
    std::vector<RationalFunction> forward; // chart variable -> expression over xspace
    std::vector<RationalFunction> inverse; // x variable -> expression over cspace
    std::vector<int> p_vars, q_vars, lambda_vars; // indices into cspace

    bool is_p(int cvar) const;
};

// Builds the role lists from the chart variable names; throws on names that
// match no role or on unpaired p/q suffixes.
Chart make_chart(VarSpacePtr xspace, VarSpacePtr cspace,
                 std::vector<RationalFunction> forward,
                 std::vector<RationalFunction> inverse);

// Express u (over x) in chart coordinates, and back.
RationalFunction chart_push(const Chart& chart, const RationalFunction& u);
RationalFunction chart_pull(const Chart& chart, const RationalFunction& g);

// Total degree in the p variables only: max over numerator monomials minus
// the same for the denominator; kNegInfDeg for zero. The norm that grades
// operators along the symplectic leaves.
int p_degree(const Chart& chart, const RationalFunction& f);

// Round trips both ways on every coordinate, Poisson-centrality of each
// lambda, and the canonical relations {p_i, q_j} = delta_ij,
// {p_i, p_j} = {q_i, q_j} = 0 computed over the x-side.
ValidationReport validate_chart(const LieAlgebra& L, const Chart& chart);

} // namespace starprod
