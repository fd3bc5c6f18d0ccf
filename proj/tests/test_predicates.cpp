// Verification predicates: grading, tangentiality, and chart-side p-degree
// correctness, with witness-producing reports.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starprod/parse.hpp"
#include "starprod/pbw.hpp"
#include "starprod/predicates.hpp"
#include "starprod/specfile.hpp"

#include <set>

using namespace starprod;

namespace {

const AlgebraSpec& g54() {
    static AlgebraSpec spec = load_algebra_spec(std::string(STARPROD_DATA_DIR) + "/g54.lie");
    return spec;
}

GuttWorkspace& workspace() {
    static GuttWorkspace ws(*g54().algebra);
    return ws;
}

Polynomial P(const std::string& text) { return parse_polynomial(text, g54().algebra->space()); }

Expvec dvar(const VarSpacePtr& space, int var1) {
    Expvec e(static_cast<size_t>(space->dim()), 0);
    e[static_cast<size_t>(var1 - 1)] = 1;
    return e;
}

Cochain poisson_cochain() {
    const LieAlgebra& L = *g54().algebra;
    return cochain_from(2, [&L](const std::vector<Polynomial>& a) {
        return poisson(L, a[0], a[1]);
    });
}

Cochain product_cochain() {
    return cochain_from(2, [](const std::vector<Polynomial>& a) { return a[0] * a[1]; });
}

Cochain gutt2_cochain() {
    return cochain_from(2, [](const std::vector<Polynomial>& a) {
        return workspace().gutt_cochain(2, a[0], a[1]);
    });
}

} // namespace

TEST_CASE("monomial tuple grid enumerates each bounded tuple once") {
    std::set<std::vector<Expvec>> seen;
    int count = 0;
    for_each_monomial_tuple(2, 2, 3, [&](const std::vector<Expvec>& t) {
        ++count;
        CHECK(seen.insert(t).second);
        int total = 0;
        for (const Expvec& e : t) total += expvec_total(e);
        CHECK(total <= 3);
        return true;
    });
    // Tuples of 4 exponents summing to at most 3: C(3+4, 4).
    CHECK(count == 35);

    int visited = 0;
    for_each_monomial_tuple(2, 2, 3, [&](const std::vector<Expvec>&) {
        ++visited;
        return visited < 5;
    });
    CHECK(visited == 5);
}

TEST_CASE("grading: the bracket lowers degree by one, failures name the tuple") {
    const auto space = g54().algebra->space();

    CheckReport bracket = is_homogeneous(poisson_cochain(), space, 1, 4, "bracket");
    CHECK(bracket.pass);
    CHECK(!bracket.witness);
    CHECK(bracket.str().substr(0, 6) == "[PASS]");

    CheckReport product = is_homogeneous(product_cochain(), space, 0, 4, "product");
    CHECK(product.pass);

    // x1*d4 preserves degree, so it is not homogeneous of degree -1; the
    // first monomial it fails on is x4 itself.
    MultiDiffOperator op(space, 1);
    op.add_term({dvar(space, 4)}, RationalFunction(P("x1")));
    CheckReport shifted = is_homogeneous(cochain_from(op), space, 1, 3, "x1*d4");
    CHECK(!shifted.pass);
    REQUIRE(shifted.witness.has_value());
    CHECK(shifted.witness->inputs == std::vector<std::string>{"x4"});
    CHECK(shifted.witness->discrepancy == "x1 is not homogeneous of degree 0");
    CHECK(shifted.str().substr(0, 6) == "[FAIL]");

    // A mixed-degree coefficient produces an inhomogeneous value outright.
    MultiDiffOperator mixed(space, 1);
    mixed.add_term({dvar(space, 4)}, RationalFunction(P("1 + x1")));
    CHECK(!is_homogeneous(cochain_from(mixed), space, 0, 3, "mixed").pass);
}

TEST_CASE("tangentiality: bracket passes, product fails on a constant slot") {
    const LieAlgebra& L = *g54().algebra;

    CheckReport bracket = is_tangential(L, poisson_cochain(), 4, "bracket");
    CHECK(bracket.pass);

    CheckReport product = is_tangential(L, product_cochain(), 3, "product");
    CHECK(!product.pass);
    REQUIRE(product.witness.has_value());
    CHECK(product.witness->inputs == std::vector<std::string>{"1", "1"});
    CHECK(product.witness->discrepancy == "nonzero on a constant slot: 1");

    // No declared invariants: the predicate refuses to certify vacuously.
    LieAlgebra bare("bare", L.space());
    CHECK_THROWS_AS(is_tangential(bare, poisson_cochain(), 2, "bracket"),
                    std::invalid_argument);
}

TEST_CASE("tangentiality: raw level-2 symmetrization cochain fails with a quadratic witness") {
    const LieAlgebra& L = *g54().algebra;
    const auto space = L.space();
    const Cochain C2 = gutt2_cochain();

    // The level-2 cochain is well graded ...
    CHECK(is_homogeneous(C2, space, 2, 4, "level-2 cochain").pass);

    // ... but moving the quadratic invariant through a slot already fails on
    // the grid of total degree 2, with the discrepancy C2(Delta, x5^2).
    CheckReport report = is_tangential(L, C2, 2, "level-2 cochain");
    CHECK(!report.pass);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->inputs == std::vector<std::string>{"1", "x5^2"});
    CHECK(report.witness->discrepancy ==
          "invariant x1*x5 - x2*x4 + 1/2*x3^2 in slot 1: difference 1/3*x2^2");

    // Frozen values of the offending map v -> C2(Delta, v) on quadratics.
    const Polynomial Delta = P("x3^2/2 + x1*x5 - x2*x4");
    auto c2d = [&](const std::string& v) {
        return workspace().gutt_cochain(2, Delta, P(v));
    };
    CHECK(c2d("x4^2") == P("x1^2/3"));
    CHECK(c2d("x4*x5") == P("x1*x2/3"));
    CHECK(c2d("x5^2") == P("x2^2/3"));
    CHECK(c2d("x4").is_zero());
    CHECK(c2d("x3^2").is_zero());
    CHECK(c2d("x3*x4").is_zero());
}

TEST_CASE("chart transport: localization agrees with the rational bracket") {
    const LieAlgebra& L = *g54().algebra;
    REQUIRE(g54().chart.has_value());
    const Chart& chart = *g54().chart;

    ChartCochainFn local_bracket = chart_map_localized(
        L, chart, 2, [&L](const std::vector<Polynomial>& a) { return poisson(L, a[0], a[1]); });

    // Canonical pair.
    const RationalFunction p1(Polynomial::variable(chart.cspace, 0));
    const RationalFunction q1(Polynomial::variable(chart.cspace, 1));
    CHECK(local_bracket({p1, q1}) == RationalFunction::constant(chart.cspace, Rat(1)));

    // Against the independent rational-function bracket, transported term by
    // term, on every chart monomial pair of total degree at most 3.
    int checked = 0;
    for_each_monomial_tuple(chart.cspace->dim(), 2, 3, [&](const std::vector<Expvec>& t) {
        const RationalFunction u(Polynomial::monomial(chart.cspace, t[0]));
        const RationalFunction v(Polynomial::monomial(chart.cspace, t[1]));
        const RationalFunction direct =
            chart_push(chart, poisson(L, chart_pull(chart, u), chart_pull(chart, v)));
        CHECK(local_bracket({u, v}) == direct);
        ++checked;
        return true;
    });
    CHECK(checked == 286);

    // Localized pointwise product is the pointwise product again.
    ChartCochainFn local_product = chart_map_localized(
        L, chart, 2, [](const std::vector<Polynomial>& a) { return a[0] * a[1]; });
    for_each_monomial_tuple(chart.cspace->dim(), 2, 3, [&](const std::vector<Expvec>& t) {
        const RationalFunction u(Polynomial::monomial(chart.cspace, t[0]));
        const RationalFunction v(Polynomial::monomial(chart.cspace, t[1]));
        CHECK(local_product({u, v}) == u * v);
        return true;
    });

    // A chart whose coordinate pulls back with a non-invariant denominator
    // cannot host the localized extension.
    auto tspace = VarSpace::make({"lambda9"});
    Chart bad;
    bad.xspace = L.space();
    bad.cspace = tspace;
    bad.forward = {RationalFunction(P("x5"), P("x4"))};
    bad.inverse.assign(static_cast<size_t>(L.space()->dim()), RationalFunction::zero(tspace));
    ChartCochainFn local_bad = chart_map_localized(
        L, bad, 1, [](const std::vector<Polynomial>& a) { return a[0]; });
    CHECK_THROWS_AS(local_bad({RationalFunction(Polynomial::variable(tspace, 0))}),
                    std::domain_error);
}

TEST_CASE("p-degree correctness: bracket drops one p, product drops none") {
    const LieAlgebra& L = *g54().algebra;
    const Chart& chart = *g54().chart;

    ChartCochainFn local_bracket = chart_map_localized(
        L, chart, 2, [&L](const std::vector<Polynomial>& a) { return poisson(L, a[0], a[1]); });
    CheckReport bracket = is_correct(chart, local_bracket, 2, 1, 3, "bracket");
    CHECK(bracket.pass);

    ChartCochainFn local_product = chart_map_localized(
        L, chart, 2, [](const std::vector<Polynomial>& a) { return a[0] * a[1]; });
    CheckReport product = is_correct(chart, local_product, 2, 0, 2, "product");
    CHECK(product.pass);

    // d_q raises nothing but claims degree -1 in p: fails on q1 itself.
    MultiDiffOperator dq(chart.cspace, 1);
    dq.add_term({dvar(chart.cspace, 2)},
                RationalFunction::constant(chart.cspace, Rat(1)));
    CheckReport wrong = is_correct(chart, chart_map_from_operator(dq), 1, 1, 2, "d_q");
    CHECK(!wrong.pass);
    REQUIRE(wrong.witness.has_value());
    CHECK(wrong.witness->inputs == std::vector<std::string>{"q1"});
}

TEST_CASE("report rendering carries grid, bound, and witness") {
    const auto space = g54().algebra->space();
    MultiDiffOperator op(space, 1);
    op.add_term({dvar(space, 4)}, RationalFunction(P("x1")));
    CheckReport report = is_homogeneous(cochain_from(op), space, 1, 3, "x1*d4");
    const std::string text = report.str();
    CHECK(text.find("[FAIL] x1*d4: homogeneous of degree -1") != std::string::npos);
    CHECK(text.find("degree <= 3") != std::string::npos);
    CHECK(text.find("witness: (x4) -> x1 is not homogeneous of degree 0") != std::string::npos);
}
