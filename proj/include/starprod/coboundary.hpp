#pragma once

#include "starprod/multidiff.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace starprod {

// Multilinear maps given as black boxes.
using CochainFn = std::function<RationalFunction(const std::vector<RationalFunction>&)>;
using PolyCochainFn = std::function<Polynomial(const std::vector<Polynomial>&)>;

// x^a / a!  (product of per-variable factorials in the denominator).
Polynomial divided_power(const VarSpacePtr& space, const Expvec& a);

// Coboundary of an s-linear operator in the complex controlling deformations
// of the pointwise product:
//
//   (dC)(u_1,...,u_{s+1}) = u_1 C(u_2,...,u_{s+1})
//       + sum_{k=1}^{s} (-1)^k C(u_1,...,u_k u_{k+1},...,u_{s+1})
//       + (-1)^{s+1} C(u_1,...,u_s) u_{s+1}.
//
// Computed in closed form on operator terms: the merged slot expands by the
// Leibniz rule, so the result is again a finite operator of the same total
// derivative order, with arity s+1.
MultiDiffOperator hochschild_delta(const MultiDiffOperator& C);

// The same differential evaluated pointwise for a black-box s-linear map;
// args.size() must be s+1 (so at least 2).
Polynomial hochschild_delta_eval(const PolyCochainFn& C, const std::vector<Polynomial>& args);
RationalFunction hochschild_delta_eval(const CochainFn& C, const std::vector<RationalFunction>& args);

// Options for recovering an operator from a black-box multilinear map.
struct ExtractOptions {
    // Largest total derivative order of any candidate term.
    int order_bound = 0;
    // Optional per-slot derivative order caps (size = arity).
    std::optional<std::vector<int>> slot_order_bounds;
    // Largest allowed degree for numerator and denominator of a recovered
    // coefficient; negative disables the check.
    int coeff_degree_bound = -1;
    // Randomized verification sweep: sample count, per-slot degree headroom
    // above the slot order cap, and RNG seed (deterministic for fixed seed).
    int sweep_samples = 100;
    int sweep_margin = 2;
    unsigned seed = 20260815u;
    // Restrict candidate derivative slots to these variables (0-based).
    // The verification sweep still uses monomials in all variables.
    std::optional<std::vector<int>> derivative_vars;
};

// Thrown when a black box is not representable within the requested bounds:
// a recovered coefficient exceeds the degree cap, or the verification sweep
// finds a point where the candidate operator disagrees with the black box.
class ExtractError : public std::runtime_error {
public:
    ExtractError(const std::string& message, std::string witness)
        : std::runtime_error(message), m_witness(std::move(witness)) {}
    const std::string& witness() const { return m_witness; }

private:
    std::string m_witness;
};

// Recover the unique multi-differential operator of the given bounds that
// agrees with `fn`, by triangular elimination at divided-power monomials:
// processing derivative tuples in ascending total order, each coefficient is
//
//   c_t = fn(x^t / t!) - sum_{t' < t componentwise} c_{t'} * x^(t-t')/(t-t')!.
//
// A randomized sweep then compares `fn` and the recovered operator on
// monomial tuples; any mismatch raises ExtractError with a witness. The
// caller is responsible for `fn` being multilinear.
MultiDiffOperator extract_operator(const CochainFn& fn, const VarSpacePtr& space, int arity,
                                   const ExtractOptions& opt);
MultiDiffOperator extract_operator(const PolyCochainFn& fn, const VarSpacePtr& space, int arity,
                                   const ExtractOptions& opt);

} // namespace starprod
