#pragma once

#include "starprod/chart.hpp"
#include "starprod/ladder.hpp"
#include "starprod/lie_algebra.hpp"
#include "starprod/multidiff.hpp"
#include "starprod/pbw.hpp"

#include <memory>
#include <optional>
#include <string>

namespace starprod {

// An open locus on which rational-coefficient operators are regular, stored
// as the polynomial that must not vanish plus a printable condition. Used
// for documentation and for refusing point evaluations where the polynomial
// is forced to zero; all symbolic computation is exact rational identity.
struct RegionDescriptor {
    std::string condition;   // e.g. "x1^2 + x2^2 + x3^2 != 0"
    Polynomial nonvanishing; // the polynomial required to be nonzero
};

// A worked example algebra loaded from its spec files: the Lie algebra with
// its declared invariants, plus — where the fixture ships them — a canonical
// chart and the correction operators that repair tangentiality of the
// order-2 cochain of the symmetrization-transported product.
//
// The stored reference forms are parsed from the operator text files next to
// the algebra file, never hard-coded. The one computed ingredient is the
// normalization scalar kappa: the loader extracts the order-2 cochain with
// the quadratic invariant frozen in slot 1, divides by the stored reference
// form, and scales every correction operator by the resulting constant, so
// all shipped operators match the computed ladder's normalization.
//
// Data members never change after load. The memo caches inside the shared
// workspace and the series are the only mutable state, so concurrent
// evaluation wants one bundle copy per thread (copies are deep).
class FixtureBundle {
public:
    const std::string& name() const { return m_name; }
    const LieAlgebra& algebra() const { return *m_algebra; }
    const std::shared_ptr<LieAlgebra>& algebra_ptr() const { return m_algebra; }
    const VarSpacePtr& space() const { return m_algebra->space(); }
    const std::shared_ptr<GuttWorkspace>& workspace() const { return m_workspace; }

    bool has_chart() const { return m_chart.has_value(); }
    bool has_corrections() const { return m_kappa.has_value(); }

    // Everything below throws std::domain_error for fixtures that carry
    // brackets and invariants only (g612, g614).
    const Chart& chart() const;

    // Ratio of the computed order-2 cochain against the stored reference
    // form c2g_delta_display; applied to every correction operator.
    const Rat& kappa() const;

    // The distinguished degree-2 invariant the corrections are built around.
    const Polynomial& quadratic_invariant() const;

    // Locus where the rational-coefficient corrections are regular.
    const RegionDescriptor& region() const;

    // Unary correction series (kappa-scaled): conjugating the transported
    // product by Id + T nu^2 + ... makes the order-2 cochain tangential.
    // Truncation: term n kills inputs with x3-degree < n - 2.
    const OperatorSeries& t_series() const;

    // The substitution x3 -> -x3 written as a derivative series in x3.
    const OperatorSeries& sigma3_series() const;

    // Chart-space form of the correction series (kappa-scaled). Truncation:
    // term n kills inputs with q-degree + 2*(lambda3-degree) < n - 2.
    const OperatorSeries& t_tilde_series() const;

    // The order-2 cochain of the transported product as a finite bilinear
    // operator (computed by extraction, not parsed).
    const MultiDiffOperator& c2g_operator() const;

    // Stored reference form of the order-2 cochain with the quadratic
    // invariant in slot 1 (unary, unscaled; kappa is the quotient).
    const MultiDiffOperator& c2g_delta_display() const;

    // Chart-space bilinear form of the order-2 cochain (kappa-scaled).
    const MultiDiffOperator& c2g_chart_operator() const;

    // Third-order unary correction with coefficients over r (kappa-scaled):
    // adding its coboundary to the order-2 cochain gives a differential
    // tangential cochain on the region.
    const MultiDiffOperator& t_prime_operator() const;

    // c2g_operator + coboundary(t_prime): bilinear, rational coefficients
    // over r, tangential and homogeneous of degree -2 on the region.
    const MultiDiffOperator& c2_kappa_operator() const;

    // Closed form of the correction series through rational intermediates:
    // second-derivative terms weighted by (sigma3 - Id)/x3^2 prefactors plus
    // third-derivative terms over x3. The 1/x3 pieces cancel pairwise, so on
    // polynomials this equals t_series applied to u. The mixed-derivative
    // prefactor is x1*x2/(6*x3^2): twice the diagonal 1/12 weight, matching
    // the series' cross term 2*x1*x2.
    RationalFunction t_closed_form(const Polynomial& u) const;

private:
    FixtureBundle() = default;

    std::string m_name;
    std::shared_ptr<LieAlgebra> m_algebra;
    std::shared_ptr<GuttWorkspace> m_workspace;
    std::optional<Chart> m_chart;

    std::optional<Rat> m_kappa;
    std::optional<Polynomial> m_quadratic_invariant;
    std::optional<RegionDescriptor> m_region;
    std::optional<OperatorSeries> m_t;
    std::optional<OperatorSeries> m_sigma3;
    std::optional<OperatorSeries> m_t_tilde;
    std::optional<MultiDiffOperator> m_c2g;
    std::optional<MultiDiffOperator> m_c2g_delta_display;
    std::optional<MultiDiffOperator> m_c2g_chart;
    std::optional<MultiDiffOperator> m_t_prime;
    std::optional<MultiDiffOperator> m_c2_kappa;

    friend FixtureBundle load_fixture(const std::string& name, const std::string& data_dir);
};

// Load one of the shipped fixtures ("g54", "g612", "g614") from its spec
// files. The one-argument form reads from the compiled-in data directory;
// the CLI exposes the override. Throws std::invalid_argument for unknown
// names and SpecError / std::runtime_error for malformed data files.
FixtureBundle load_fixture(const std::string& name);
FixtureBundle load_fixture(const std::string& name, const std::string& data_dir);

// The correction series of a bundle (throws for fixtures without one).
const OperatorSeries& t_correction(const FixtureBundle& bundle);

// Evaluator for the corrected order-2 cochain C2 + delta(T): exact on
// polynomial pairs, tangential and homogeneous of degree -2.
BilinearCochain corrected_c2(const FixtureBundle& bundle);

// The differential tangential representative C2 + delta(T') with rational
// coefficients over r (throws for fixtures without one).
const MultiDiffOperator& c2_kappa(const FixtureBundle& bundle);

// The chart-space operators of a bundle, as references into it.
struct ChartForms {
    const MultiDiffOperator& c2g_chart;
    const OperatorSeries& t_tilde;
};
ChartForms chart_form_operators(const FixtureBundle& bundle);

} // namespace starprod
