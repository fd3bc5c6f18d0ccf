#pragma once

#include "starprod/polynomial.hpp"
#include "starprod/rational_function.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starprod {

struct ValidationIssue {
    std::string check;  // "jacobi", "triangular", "invariant", ...
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
    std::string str() const;
};

// A finite-dimensional Lie algebra given by rational structure constants on
// an ordered basis x1..xm, together with declared Poisson-central invariants
// of its linear dual. Brackets are stored antisymmetrically; setting [i,j]
// also sets [j,i].
class LieAlgebra {
public:
    LieAlgebra(std::string name, VarSpacePtr space);

    const std::string& name() const { return m_name; }
    int dim() const { return m_space->dim(); }
    const VarSpacePtr& space() const { return m_space; }

    // [x_(i+1), x_(j+1)] = sum_k coeffs[k] x_(k+1), indices 0-based.
    void set_bracket(int i, int j, std::vector<Rat> coeffs);
    const Rat& c(int i, int j, int k) const;
    Polynomial bracket(int i, int j) const;

    void add_invariant(Polynomial inv);
    const std::vector<Polynomial>& invariants() const { return m_invariants; }

    // Structural checks:
    //  - jacobi: the Jacobi identity on all basis triples
    //  - triangular: for i > j every [x_i, x_j] lies in the span of x_k, k < j,
    //    which makes basis reordering in the enveloping algebra terminate
    //  - invariant: every declared invariant Poisson-commutes with all
    //    coordinates
    ValidationReport validate() const;

private:
    std::string m_name;
    VarSpacePtr m_space;
    std::vector<std::vector<std::vector<Rat>>> m_c; // m_c[i][j][k]
    std::vector<Polynomial> m_invariants;
};

// Poisson bracket on the dual: {u, v} = sum_(i<j) [x_i, x_j]-components
// weighted by (d_i u d_j v - d_j u d_i v), so {x_i, x_j} = [x_i, x_j].
Polynomial poisson(const LieAlgebra& L, const Polynomial& u, const Polynomial& v);
RationalFunction poisson(const LieAlgebra& L, const RationalFunction& u, const RationalFunction& v);

// True when {f, x_i} = 0 for every coordinate; returns the failing
// coordinate index otherwise.
std::optional<int> poisson_noncentral_witness(const LieAlgebra& L, const RationalFunction& f);

} // namespace starprod
