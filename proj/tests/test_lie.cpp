#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "starprod/chart.hpp"
#include "starprod/lie_algebra.hpp"
#include "starprod/parse.hpp"
#include "starprod/specfile.hpp"

#include <random>

using namespace starprod;

namespace {

AlgebraSpec g54() { return load_algebra_spec(std::string(STARPROD_DATA_DIR) + "/g54.lie"); }
AlgebraSpec g612() { return load_algebra_spec(std::string(STARPROD_DATA_DIR) + "/g612.lie"); }
AlgebraSpec g614() { return load_algebra_spec(std::string(STARPROD_DATA_DIR) + "/g614.lie"); }

Polynomial random_poly(std::mt19937_64& rng, const VarSpacePtr& space, int maxdeg, int nterms) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    Polynomial p(space);
    for (int t = 0; t < nterms; ++t) {
        Expvec e(static_cast<size_t>(space->dim()), 0);
        int budget = deg(rng);
        std::uniform_int_distribution<int> var(0, space->dim() - 1);
        while (budget-- > 0) e[static_cast<size_t>(var(rng))] += 1;
        p.add_term(e, Rat(coef(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("fixture algebras parse and validate") {
    for (auto spec : {g54(), g612(), g614()}) {
        auto report = spec.algebra->validate();
        INFO(spec.algebra->name(), ": ", report.str());
        CHECK(report.ok);
    }
    auto spec = g54();
    CHECK(spec.algebra->name() == "g54");
    CHECK(spec.algebra->dim() == 5);
    CHECK(spec.algebra->invariants().size() == 3);
    CHECK(spec.chart.has_value());
    CHECK(g612().algebra->invariants().size() == 2);
    CHECK(g614().algebra->invariants().size() == 2);
}

TEST_CASE("poisson brackets on the smallest fixture") {
    auto spec = g54();
    const auto& L = *spec.algebra;
    auto sp = L.space();
    auto P = [&](const char* s) { return parse_polynomial(s, sp); };

    CHECK(poisson(L, P("x5"), P("x4")) == P("x3"));
    CHECK(poisson(L, P("x5"), P("x3")) == P("x2"));
    CHECK(poisson(L, P("x4"), P("x3")) == P("x1"));
    CHECK(poisson(L, P("x4"), P("x5")) == P("-x3"));
    CHECK(poisson(L, P("x5"), P("x5")).is_zero());
    CHECK(poisson(L, P("x5^2"), P("x4")) == P("2*x3*x5"));

    for (const auto& inv : L.invariants())
        CHECK(!poisson_noncentral_witness(L, RationalFunction(inv)).has_value());
    CHECK(poisson_noncentral_witness(L, parse_expression("x3", sp)).has_value());

    // Rational arguments run through the same derivation rules.
    CHECK(poisson(L, parse_expression("x4", sp), parse_expression("x3/x1", sp)) ==
          parse_expression("1", sp));
}

TEST_CASE("poisson bracket is a biderivation satisfying jacobi") {
    auto spec = g614();
    const auto& L = *spec.algebra;
    std::mt19937_64 rng(4711);
    for (int trial = 0; trial < 15; ++trial) {
        Polynomial u = random_poly(rng, L.space(), 3, 3);
        Polynomial v = random_poly(rng, L.space(), 3, 3);
        Polynomial w = random_poly(rng, L.space(), 3, 3);
        CHECK(poisson(L, u, v * w) == poisson(L, u, v) * w + v * poisson(L, u, w));
        CHECK(poisson(L, u, v) == -poisson(L, v, u));
        Polynomial jac = poisson(L, u, poisson(L, v, w)) + poisson(L, v, poisson(L, w, u)) +
                         poisson(L, w, poisson(L, u, v));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("chart on the smallest fixture validates and transports") {
    auto spec = g54();
    const auto& L = *spec.algebra;
    REQUIRE(spec.chart.has_value());
    const Chart& chart = *spec.chart;

    auto report = validate_chart(L, chart);
    INFO(report.str());
    CHECK(report.ok);

    auto X = [&](const char* s) { return parse_expression(s, chart.xspace); };
    auto C = [&](const char* s) { return parse_expression(s, chart.cspace); };

    CHECK(chart_push(chart, X("x3^2/2 + x1*x5 - x2*x4")) == C("lambda3"));
    CHECK(chart_push(chart, X("x3^2")) == C("q1^2*lambda1^2"));
    CHECK(chart_push(chart, X("x4")) == C("p1"));
    CHECK(chart_pull(chart, C("lambda3")) == X("x3^2/2 + x1*x5 - x2*x4"));
    CHECK(chart_pull(chart, chart_push(chart, X("x5"))) == X("x5"));

    // The p-grading of transported elements.
    CHECK(p_degree(chart, chart_push(chart, X("x4^3"))) == 3);
    CHECK(p_degree(chart, chart_push(chart, X("x3^2"))) == 0);
    CHECK(p_degree(chart, chart_push(chart, X("x3^2/2 + x1*x5 - x2*x4"))) == 0); // push = lambda3
    CHECK(p_degree(chart, C("q1/p1^2")) == -2);
    CHECK(p_degree(chart, C("0")) == kNegInfDeg);
}

TEST_CASE("validation flags structural defects") {
    // Jacobi failure that stays triangular: on (x4, x5, x6) the cyclic sum
    // picks up [x6, x3] = x2 with nothing to cancel it.
    auto bad_jacobi = parse_algebra_spec(
        "name bad\n"
        "dim 6\n"
        "bracket [6,5] = x4\n"
        "bracket [6,4] = x3\n"
        "bracket [6,3] = x2\n"
        "bracket [5,4] = x3\n");
    auto report = bad_jacobi.algebra->validate();
    CHECK(!report.ok);
    bool saw_jacobi = false;
    for (const auto& issue : report.issues) saw_jacobi |= issue.check == "jacobi";
    CHECK(saw_jacobi);

    // Triangularity failure: [x2, x1] may only involve coordinates below x1.
    auto bad_tri = parse_algebra_spec(
        "name bad\n"
        "dim 2\n"
        "bracket [2,1] = x1\n");
    report = bad_tri.algebra->validate();
    CHECK(!report.ok);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].check == "triangular");

    // Declared invariant that is not central.
    auto bad_inv = parse_algebra_spec(
        "name bad\n"
        "dim 5\n"
        "bracket [5,4] = x3\n"
        "bracket [5,3] = x2\n"
        "bracket [4,3] = x1\n"
        "invariant x3\n");
    report = bad_inv.algebra->validate();
    CHECK(!report.ok);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].check == "invariant");
    CHECK(report.issues[0].detail.find("x3") != std::string::npos);
}

TEST_CASE("algebra file errors carry line numbers") {
    CHECK_THROWS_AS(parse_algebra_spec("dim 3\n"), SpecError);
    CHECK_THROWS_AS(parse_algebra_spec("name a\nbracket [2,1] = x1\n"), SpecError);

    auto check_line = [](const std::string& text, int line, const char* needle) {
        try {
            parse_algebra_spec(text);
            FAIL("expected SpecError for: ", needle);
        } catch (const SpecError& e) {
            CHECK(e.line == line);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    check_line("name a\ndim 2\nbracket [2,1] = x1\nbracket [1,2] = x2\n", 4, "already set");
    check_line("name a\ndim 2\nbracket [3,1] = x1\n", 3, "out of range");
    check_line("name a\ndim 2\nbracket [2,1] = x1^2\n", 3, "linear");
    check_line("name a\ndim 2\nbracket [2,1] = x7\n", 3, "unknown variable 'x7'");
    check_line("name a\ndim 2\nfrobnicate x1\n", 3, "unknown directive");
    check_line("name a\ndim 2\nchart p1 = x1\n", 3, "no inverse lines");
    check_line("name a\ndim 2\ninverse x1 = p1\n", 3, "before any chart");
    check_line("name a\ndim 0\n", 2, "positive");

    // Missing one inverse line: reported at end of file.
    CHECK_THROWS_WITH_AS(
        parse_algebra_spec("name a\ndim 2\nbracket [2,1] = 0\nchart p1 = x1\nchart q1 = x2\n"
                           "chart lambda1 = x1\ninverse x1 = p1\n"),
        doctest::Contains("missing inverse for x2"), SpecError);
}

TEST_CASE("chart role names are enforced") {
    auto xs = numbered_space(2);
    auto good = VarSpace::make({"p1", "q1"});
    auto bad = VarSpace::make({"p1", "r1"});
    std::vector<RationalFunction> fwd = {parse_expression("x1", xs), parse_expression("x2", xs)};
    std::vector<RationalFunction> inv = {parse_expression("p1", good), parse_expression("q1", good)};
    CHECK_NOTHROW(make_chart(xs, good, fwd, inv));
    std::vector<RationalFunction> inv_bad = {parse_expression("p1", bad), parse_expression("r1", bad)};
    CHECK_THROWS_WITH_AS(make_chart(xs, bad, fwd, inv_bad), doctest::Contains("matches none"),
                         std::invalid_argument);
    auto unpaired = VarSpace::make({"p1", "q2"});
    std::vector<RationalFunction> inv_up = {parse_expression("p1", unpaired),
                                            parse_expression("q2", unpaired)};
    CHECK_THROWS_WITH_AS(make_chart(xs, unpaired, fwd, inv_up), doctest::Contains("matched pairs"),
                         std::invalid_argument);
}
