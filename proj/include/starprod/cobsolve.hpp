#pragma once

#include "starprod/coboundary.hpp"
#include "starprod/ladder.hpp"
#include "starprod/lie_algebra.hpp"
#include "starprod/predicates.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starprod {

// Side conditions imposed on the unknown operator, besides delta C = E.
// Degree grading is part of the ansatz itself: the coefficient of a term
// with derivative multi-indices a_1..a_s is a homogeneous polynomial of
// degree |a_1| + ... + |a_s| - n, so every candidate is homogeneous of
// degree -n by construction.
struct SolveConstraints {
    // Tie C(v, u) = (-1)^n C(u, v) structurally (binary unknowns only).
    bool parity = true;
    // Declared invariants pass through every slot. Pure-coordinate linear
    // invariants are enforced structurally by banning their derivatives;
    // the rest become linear conditions on the coefficients, imposed for
    // every derivative pattern observable below degree_bound.
    bool tangential = true;
};

struct SolveOptions {
    int order_bound = 6;   // per-slot derivative order cap (each slot >= 1)
    int degree_bound = 6;  // training range: monomial tuples of total degree <= this
    SolveConstraints constraints;
    int unknown_arity = 2; // 1 or 2; the right-hand side has one more slot

    // Derivative variables allowed in the unknown's slots (0-based). Defaults
    // to every coordinate that is not itself a declared invariant, which
    // loses nothing once tangentiality is requested.
    std::optional<std::vector<int>> derivative_vars;

    // Restrict coefficients to the weight slice selected by grading_weights,
    // when those weights exist and the right-hand side lies in the zero
    // slice. Every particular solution of such a right-hand side survives;
    // only nullspace directions of other weights are pruned.
    bool weight_slice = true;

    int nullspace_basis_cap = 8; // how many nullspace directions to realize
};

struct SolveOutcome {
    bool feasible = false;
    std::optional<MultiDiffOperator> solution; // free coordinates set to zero
    int nullspace_dimension = 0;
    std::vector<MultiDiffOperator> nullspace_basis; // first few directions
    int unknowns = 0;
    int rows = 0;
    int rank = 0;
    std::string detail; // infeasibility witness, or a one-line solve summary
};

// Positive integer weights w with w(x_k) = w(x_i) + w(x_j) whenever
// [x_i, x_j] has an x_k component, so every bracket preserves weight;
// nullopt when no positive assignment exists.
std::optional<std::vector<int>> grading_weights(const LieAlgebra& L);

// Find an s-linear operator C with delta C = E, matched as exact linear
// conditions on all monomial (s+1)-tuples of total degree <= degree_bound.
// Equivalently (and implemented this way): E is first recovered as an exact
// operator on that range, and the matching is done coefficient by
// coefficient, which the divided-power dual basis makes the same system.
// Terms of combined order beyond degree_bound cannot fire on the training
// range and are excluded from the ansatz. Returns one solution with all free
// coordinates zero plus the nullspace dimension of the training system, or
// an infeasibility report quoting the first contradictory condition.
SolveOutcome solve_coboundary(const LieAlgebra& L, const CochainFn& E, int n,
                              const SolveOptions& opt);

// The level-k associativity defect of a ladder as an evaluator with one slot
// more than the ladder's entries (arguments converted at the boundary).
CochainFn defect_evaluator(const CochainLadder& ladder, int k);

// Spot-check delta C = E beyond the training range: evaluates both sides on
// every pure-power tuple of total degree exactly `degree`, plus `samples`
// seeded pseudo-random mixed monomial tuples of total degree in
// [degree - 1, degree]. Exact comparison; the first mismatch is reported.
CheckReport verify_coboundary_solution(const CochainFn& E, const MultiDiffOperator& C,
                                       int degree, int samples, unsigned seed,
                                       const std::string& subject);

} // namespace starprod
