// Acceptance gate: twelve criteria, one line each, exact arithmetic
// throughout. Exit code 0 iff every criterion passes. Witnesses and measured
// constants print as indented notes under the owning criterion.

#include "starprod/cobsolve.hpp"
#include "starprod/fixtures.hpp"
#include "starprod/ladder.hpp"
#include "starprod/parse.hpp"
#include "starprod/predicates.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

using namespace starprod;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(std::string note) {
        pass = false;
        notes.push_back(std::move(note));
    }
    void note(std::string n) { notes.push_back(std::move(n)); }
    void absorb(const CheckReport& check) {
        pass = pass && check.pass;
        std::string line = check.str();
        for (auto& ch : line)
            if (ch == '\n') ch = ' ';
        notes.push_back(std::move(line));
    }
};

const FixtureBundle& g54() {
    static FixtureBundle bundle = load_fixture("g54");
    return bundle;
}

const BilinearCochain& corrected() {
    static BilinearCochain c = corrected_c2(g54());
    return c;
}

Polynomial monomial(const VarSpacePtr& space, const Expvec& e) {
    Polynomial p(space);
    p.add_term(e, Rat(1));
    return p;
}

// Criterion 8 artifacts, reused by criterion 9.
struct SolveArtifacts {
    SolveOutcome outcome;
    std::shared_ptr<CochainLadder> ladder; // corrected through order 2
    CochainFn defect;                      // order-3 associativity defect
};
std::optional<SolveArtifacts> solved3;

// 1. Transported-product associativity: full residuals vanish through order
//    4 on every monomial triple of total degree <= 6.
Outcome criterion1() {
    Outcome oc;
    const auto& ws = g54().workspace();
    const VarSpacePtr& X = g54().space();
    CochainLadder ladder = make_gutt_ladder(ws, 4);
    for_each_monomial_tuple(X->dim(), 3, 6, [&](const std::vector<Expvec>& es) {
        Polynomial u = monomial(X, es[0]);
        Polynomial v = monomial(X, es[1]);
        Polynomial w = monomial(X, es[2]);
        for (int k = 1; k <= 4; ++k) {
            Polynomial d = associator_defect(ladder, k, u, v, w);
            if (!d.is_zero()) {
                oc.fail("order " + std::to_string(k) + " residual on (" + u.str() + ", " +
                        v.str() + ", " + w.str() + ") = " + d.str());
                return false;
            }
        }
        return true;
    });
    if (oc.pass) oc.note("orders 1..4, all monomial triples of total degree <= 6");
    return oc;
}

// 2. The order-1 cochain is the Poisson bracket on pairs of degree <= 5.
Outcome criterion2() {
    Outcome oc;
    const auto& ws = g54().workspace();
    const LieAlgebra& L = g54().algebra();
    const VarSpacePtr& X = g54().space();
    for_each_monomial_tuple(X->dim(), 2, 5, [&](const std::vector<Expvec>& es) {
        Polynomial u = monomial(X, es[0]);
        Polynomial v = monomial(X, es[1]);
        Polynomial d = ws->gutt_cochain(1, u, v) - poisson(L, u, v);
        if (!d.is_zero()) {
            oc.fail("(" + u.str() + ", " + v.str() + ") -> " + d.str());
            return false;
        }
        return true;
    });
    if (oc.pass) oc.note("all monomial pairs of total degree <= 5");
    return oc;
}

// 3. Extraction of the order-2 cochain with the quadratic invariant frozen
//    in slot one is a constant multiple of the stored display; the constant
//    is reported.
Outcome criterion3() {
    Outcome oc;
    const auto& b = g54();
    const auto& ws = b.workspace();
    const VarSpacePtr& X = b.space();
    Polynomial delta = b.quadratic_invariant();

    ExtractOptions opt;
    opt.order_bound = 2;
    opt.slot_order_bounds = std::vector<int>{2};
    MultiDiffOperator got = extract_operator(
        [&](const std::vector<Polynomial>& args) { return ws->gutt_cochain(2, delta, args.at(0)); },
        X, 1, opt);

    auto e = [&](std::initializer_list<int> vars) {
        Expvec v(static_cast<size_t>(X->dim()), 0);
        for (int i : vars) v[static_cast<size_t>(i - 1)] += 1;
        return v;
    };
    MultiDiffOperator display(X, 1);
    display.add_term({e({4, 4})}, parse_polynomial("x1^2/6", X));
    display.add_term({e({4, 5})}, parse_polynomial("x1*x2/3", X));
    display.add_term({e({5, 5})}, parse_polynomial("x2^2/6", X));

    const auto& [idx, ref_coef] = *display.terms().begin();
    auto it = got.terms().find(idx);
    if (it == got.terms().end()) {
        oc.fail("extracted operator misses the leading display term");
        return oc;
    }
    RationalFunction quot = it->second / ref_coef;
    if (!quot.is_polynomial() || !quot.as_polynomial().is_constant()) {
        oc.fail("leading-term quotient is not a constant: " + quot.str());
        return oc;
    }
    Rat kappa = quot.as_polynomial().constant_value();
    if (kappa == 0) {
        oc.fail("normalization constant is zero");
        return oc;
    }
    if (got != display * kappa) {
        oc.fail("extracted operator is not a constant multiple of the display");
        oc.note("extracted:\n" + operator_text(got));
        return oc;
    }
    oc.note("kappa = " + rat_str(kappa));
    if (kappa != b.kappa()) oc.fail("loader normalization disagrees: " + rat_str(b.kappa()));
    return oc;
}

// 4. The raw order-2 cochain is not tangential, witnessed on the invariant
//    slot by a monomial of degree <= 2.
Outcome criterion4() {
    Outcome oc;
    const auto& b = g54();
    const auto& ws = b.workspace();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();
    Polynomial delta = b.quadratic_invariant();

    bool found = false;
    for_each_monomial_tuple(X->dim(), 1, 2, [&](const std::vector<Expvec>& es) {
        Polynomial v = monomial(X, es[0]);
        Polynomial d = ws->gutt_cochain(2, delta, v);
        if (!d.is_zero()) {
            found = true;
            oc.note("witness: raw C2(" + delta.str() + ", " + v.str() + ") = " + d.str());
            return false;
        }
        return true;
    });
    if (!found) oc.fail("no nonzero value of the invariant slot found at degree <= 2");

    Cochain raw = cochain_from(2, [ws](const std::vector<Polynomial>& a) {
        return ws->gutt_cochain(2, a[0], a[1]);
    });
    CheckReport t = is_tangential(L, raw, 2, "raw order-2 cochain");
    if (t.pass) oc.fail("tangentiality unexpectedly passed for the raw cochain");
    return oc;
}

// 5. The corrected order-2 cochain is tangential at degree 6, homogeneous of
//    degree -2, and annihilates the quadratic-invariant slot.
Outcome criterion5() {
    Outcome oc;
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();
    const BilinearCochain& corr = corrected();
    Cochain cc = cochain_from(corr);

    oc.absorb(is_tangential(L, cc, 6, "corrected order-2 cochain"));
    oc.absorb(is_homogeneous(cc, X, 2, 6, "corrected order-2 cochain"));

    Polynomial delta = b.quadratic_invariant();
    bool slot_ok = true;
    for_each_monomial_tuple(X->dim(), 1, 6, [&](const std::vector<Expvec>& es) {
        Polynomial m = monomial(X, es[0]);
        Polynomial left = corr(delta, m);
        Polynomial right = corr(m, delta);
        if (!left.is_zero() || !right.is_zero()) {
            slot_ok = false;
            oc.fail("invariant slot leaks on " + m.str() + ": " +
                    (left.is_zero() ? right.str() : left.str()));
            return false;
        }
        return true;
    });
    if (slot_ok) oc.note("C2(invariant, m) = C2(m, invariant) = 0 for all m of degree <= 6");
    return oc;
}

// 6. Chart: round trips hold; the pushed order-2 cochain matches the stored
//    chart-space form on pairs of degree <= 4; the x3 reflection series is
//    the substitution x3 -> -x3 through degree 8.
Outcome criterion6() {
    Outcome oc;
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();
    const Chart& chart = b.chart();
    const auto& ws = b.workspace();

    ValidationReport v = validate_chart(L, chart);
    if (!v.ok) {
        for (const auto& issue : v.issues) oc.fail("chart: " + issue.check + ": " + issue.detail);
    } else {
        oc.note("chart round trips and canonical relations hold");
    }

    const MultiDiffOperator& chart_op = b.c2g_chart_operator();
    bool push_ok = true;
    for_each_monomial_tuple(X->dim(), 2, 4, [&](const std::vector<Expvec>& es) {
        Polynomial u = monomial(X, es[0]);
        Polynomial v2 = monomial(X, es[1]);
        RationalFunction lhs = chart_push(chart, RationalFunction(ws->gutt_cochain(2, u, v2)));
        RationalFunction rhs = chart_op.apply(
            {chart_push(chart, RationalFunction(u)), chart_push(chart, RationalFunction(v2))});
        RationalFunction d = lhs - rhs;
        if (!d.is_zero()) {
            push_ok = false;
            oc.fail("pushed cochain mismatch on (" + u.str() + ", " + v2.str() + "): " + d.str());
            return false;
        }
        return true;
    });
    if (push_ok) oc.note("pushed order-2 cochain matches the chart-space form on pairs <= 4");

    const OperatorSeries& sigma3 = b.sigma3_series();
    auto x3 = X->index("x3");
    std::vector<Polynomial> images;
    for (int i = 0; i < X->dim(); ++i) {
        Expvec e(static_cast<size_t>(X->dim()), 0);
        e[static_cast<size_t>(i)] = 1;
        Polynomial xi = monomial(X, e);
        images.push_back(x3 && *x3 == i ? -xi : xi);
    }
    bool refl_ok = true;
    for_each_monomial_tuple(X->dim(), 1, 8, [&](const std::vector<Expvec>& es) {
        Polynomial m = monomial(X, es[0]);
        Polynomial d = sigma3.apply({m}) - substitute(m, images);
        if (!d.is_zero()) {
            refl_ok = false;
            oc.fail("reflection series mismatch on " + m.str() + ": " + d.str());
            return false;
        }
        return true;
    });
    if (refl_ok) oc.note("reflection series equals the substitution through degree 8");
    return oc;
}

// 7. The corrected cochain is correct of degree -2 in the chart's p-degree
//    on the localized family of degree <= 5.
Outcome criterion7() {
    Outcome oc;
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const BilinearCochain& corr = corrected();
    auto fn = chart_map_localized(L, b.chart(), 2, [&corr](const std::vector<Polynomial>& a) {
        return corr(a[0], a[1]);
    });
    oc.absorb(is_correct(b.chart(), fn, 2, 2, 5, "corrected order-2 cochain"));
    return oc;
}

// 8. The order-3 coboundary equation on the corrected ladder: solve with
//    order bound 6 and training degree 6; the solution re-verifies out of
//    sample and is skew, homogeneous of degree -3, and tangential.
Outcome criterion8() {
    Outcome oc;
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();
    const auto& ws = b.workspace();

    auto ladder = std::make_shared<CochainLadder>(make_gutt_ladder(ws, 2));
    ladder->set_entry(2, corrected());
    CochainFn defect = defect_evaluator(*ladder, 3);

    SolveOptions opt;
    opt.order_bound = 6;
    opt.degree_bound = 6;
    opt.unknown_arity = 2;
    opt.constraints.parity = true;
    opt.constraints.tangential = true;
    SolveOutcome outcome = solve_coboundary(L, defect, 3, opt);
    oc.note(outcome.detail);
    solved3 = SolveArtifacts{outcome, ladder, defect};

    if (!outcome.feasible || !outcome.solution) {
        oc.fail("no solution within the ansatz");
        // Pin down the blocking constraint: the same window without the
        // tangentiality rows, judged against the fresh grid afterwards.
        SolveOptions dopt = opt;
        dopt.constraints.tangential = false;
        SolveOutcome diag = solve_coboundary(L, defect, 3, dopt);
        if (diag.feasible && diag.solution) {
            oc.note("tangentiality is the blocking constraint; without it: " + diag.detail);
            oc.absorb(verify_coboundary_solution(defect, *diag.solution, 8, 40, 20260815u,
                                                 "non-tangential solution"));
        } else {
            oc.note("still infeasible without the tangential constraint: " + diag.detail);
        }
        return oc;
    }
    const MultiDiffOperator& sol = *outcome.solution;
    oc.note("nullspace dimension " + std::to_string(outcome.nullspace_dimension));

    oc.absorb(verify_coboundary_solution(defect, sol, 8, 40, 20260815u, "solved order-3 cochain"));

    bool skew_ok = true;
    for_each_monomial_tuple(X->dim(), 2, 5, [&](const std::vector<Expvec>& es) {
        Polynomial u = monomial(X, es[0]);
        Polynomial v = monomial(X, es[1]);
        RationalFunction d = sol.apply({RationalFunction(u), RationalFunction(v)}) +
                             sol.apply({RationalFunction(v), RationalFunction(u)});
        if (!d.is_zero()) {
            skew_ok = false;
            oc.fail("parity defect on (" + u.str() + ", " + v.str() + "): " + d.str());
            return false;
        }
        return true;
    });
    if (skew_ok) oc.note("slot-swap parity -1 on pairs <= 5");

    Cochain cc = cochain_from(sol);
    oc.absorb(is_homogeneous(cc, X, 3, 5, "solved order-3 cochain"));
    oc.absorb(is_tangential(L, cc, 5, "solved order-3 cochain"));
    return oc;
}

// 9. Two distinct order-3 solutions from the solver's nullspace differ by a
//    coboundary of a unary cochain, and conjugating one ladder by that unary
//    cochain reproduces the other at order 3.
Outcome criterion9() {
    Outcome oc;
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();

    if (!solved3 || !solved3->outcome.feasible || !solved3->outcome.solution) {
        oc.fail("depends on a solver solution from criterion 8, which is unavailable");
        return oc;
    }
    const SolveOutcome& base = solved3->outcome;
    if (base.nullspace_dimension == 0 || base.nullspace_basis.empty()) {
        oc.fail("the ansatz pins a unique solution: no second solution exists to compare");
        return oc;
    }

    const MultiDiffOperator& c3 = *base.solution;
    const MultiDiffOperator& nu = base.nullspace_basis.front();
    MultiDiffOperator c3p = c3 + nu;
    oc.note("second solution = first + nullspace direction 1 of " +
            std::to_string(base.nullspace_dimension));

    // The difference must cobound: find a unary primitive of nu.
    CochainFn nu_fn = [&nu](const std::vector<RationalFunction>& a) { return nu.apply(a); };
    SolveOptions uopt;
    uopt.order_bound = 6;
    uopt.degree_bound = 6;
    uopt.unknown_arity = 1;
    uopt.constraints.tangential = false;
    SolveOutcome primitive = solve_coboundary(L, nu_fn, 3, uopt);
    if (!primitive.feasible || !primitive.solution) {
        oc.fail("solution difference is not a unary coboundary within the ansatz: " +
                primitive.detail);
        return oc;
    }
    const MultiDiffOperator& unary = *primitive.solution;
    if (hochschild_delta(unary) != nu) {
        oc.fail("unary primitive does not reproduce the difference exactly");
        return oc;
    }
    oc.note("difference = coboundary of a unary cochain with " +
            std::to_string(unary.term_count()) + " terms");

    // Conjugating the first ladder by the unary cochain must give the second.
    auto ladder_with = [&](const MultiDiffOperator& top) {
        CochainLadder l = *solved3->ladder; // entries 0..2, order-2 corrected
        l.set_entry(3, BilinearCochain(top));
        return l;
    };
    CochainLadder A = ladder_with(c3);
    CochainLadder B = ladder_with(c3p);

    auto matches = [&](const CochainLadder& gauged) {
        bool ok = true;
        for_each_monomial_tuple(X->dim(), 2, 4, [&](const std::vector<Expvec>& es) {
            Polynomial u = monomial(X, es[0]);
            Polynomial v = monomial(X, es[1]);
            for (int n = 0; n <= 3; ++n) {
                if (!(gauged.apply(n, u, v) - B.apply(n, u, v)).is_zero()) {
                    ok = false;
                    return false;
                }
            }
            return true;
        });
        return ok;
    };

    std::map<int, MultiDiffOperator> T{{3, unary}};
    if (matches(gauge_transform(A, T, 3))) {
        oc.note("gauge transform with the unary primitive matches the second ladder at order 3");
        return oc;
    }
    std::map<int, MultiDiffOperator> Tneg{{3, -unary}};
    if (matches(gauge_transform(A, Tneg, 3))) {
        oc.note("gauge transform with the negated unary primitive matches at order 3");
        return oc;
    }
    oc.fail("gauge transform with the unary primitive does not reproduce the second ladder");
    return oc;
}

// Companion demonstration for criterion 9, reported under it as notes: with
// the slot-swap parity fold relaxed, solution differences include symmetric
// directions, and those are unary coboundaries realized by gauge transforms.
void criterion9_relaxed(Outcome& oc) {
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();
    auto say = [&oc](const std::string& s) { oc.note("parity relaxed: " + s); };

    if (!solved3) {
        say("skipped: no criterion 8 artifacts");
        return;
    }
    SolveOptions ropt;
    ropt.order_bound = 6;
    ropt.degree_bound = 6;
    ropt.unknown_arity = 2;
    ropt.constraints.parity = false;
    ropt.constraints.tangential = true;
    ropt.nullspace_basis_cap = 16;
    SolveOutcome relaxed = solve_coboundary(L, solved3->defect, 3, ropt);
    say(relaxed.detail);
    if (!relaxed.feasible || !relaxed.solution) {
        // Tangentiality blocks every window solution; drop it as well so the
        // gauge machinery can still be demonstrated on the family that does
        // exist at this order and degree.
        ropt.constraints.tangential = false;
        relaxed = solve_coboundary(L, solved3->defect, 3, ropt);
        say("tangentiality also relaxed: " + relaxed.detail);
        if (!relaxed.feasible || !relaxed.solution) return;
    }

    auto flip = [](const MultiDiffOperator& op) {
        MultiDiffOperator out(op.space(), 2);
        for (const auto& [idx, coef] : op.terms()) out.add_term({idx[1], idx[0]}, coef);
        return out;
    };
    std::optional<MultiDiffOperator> sym;
    for (const MultiDiffOperator& dir : relaxed.nullspace_basis) {
        MultiDiffOperator s = dir + flip(dir);
        if (!s.is_zero()) {
            sym = std::move(s);
            break;
        }
    }
    if (!sym) {
        say("no symmetric nullspace direction among the realized basis");
        return;
    }
    say("found a symmetric nullspace direction with " + std::to_string(sym->term_count()) +
        " terms");

    CochainFn sym_fn = [&sym](const std::vector<RationalFunction>& a) { return sym->apply(a); };
    SolveOptions uopt;
    uopt.order_bound = 6;
    uopt.degree_bound = 6;
    uopt.unknown_arity = 1;
    uopt.constraints.tangential = false;
    SolveOutcome primitive = solve_coboundary(L, sym_fn, 3, uopt);
    if (!primitive.feasible || !primitive.solution) {
        say("no unary primitive found: " + primitive.detail);
        return;
    }
    const MultiDiffOperator& unary = *primitive.solution;
    if (hochschild_delta(unary) != *sym) {
        say("unary primitive does not reproduce the symmetric direction exactly");
        return;
    }
    say("symmetric difference = coboundary of a unary cochain, exactly");

    CochainLadder A = *solved3->ladder;
    A.set_entry(3, BilinearCochain(*relaxed.solution));
    CochainLadder B = *solved3->ladder;
    B.set_entry(3, BilinearCochain(*relaxed.solution + *sym));
    auto matches = [&](const CochainLadder& gauged) {
        bool ok = true;
        for_each_monomial_tuple(X->dim(), 2, 4, [&](const std::vector<Expvec>& es) {
            Polynomial u = monomial(X, es[0]);
            Polynomial v = monomial(X, es[1]);
            for (int n = 0; n <= 3; ++n) {
                if (!(gauged.apply(n, u, v) - B.apply(n, u, v)).is_zero()) {
                    ok = false;
                    return false;
                }
            }
            return true;
        });
        return ok;
    };
    std::map<int, MultiDiffOperator> T{{3, unary}};
    std::map<int, MultiDiffOperator> Tneg{{3, -unary}};
    if (matches(gauge_transform(A, T, 3))) {
        say("gauge transform with the unary primitive matches the shifted ladder at order 3");
    } else if (matches(gauge_transform(A, Tneg, 3))) {
        say("gauge transform with the negated unary primitive matches at order 3");
    } else {
        say("gauge transform does not reproduce the shifted ladder");
    }
}

Outcome criterion9_full() {
    Outcome oc = criterion9();
    if (!oc.pass) criterion9_relaxed(oc);
    return oc;
}

// 10. The six-dimensional examples: declared invariants are Poisson-central
//     and transported-product associativity holds through order 4 at degree
//     <= 5.
Outcome criterion10() {
    Outcome oc;
    for (const std::string name : {"g612", "g614"}) {
        FixtureBundle b = load_fixture(name);
        const LieAlgebra& L = b.algebra();
        const VarSpacePtr& X = b.space();

        for (const auto& inv : L.invariants()) {
            auto w = poisson_noncentral_witness(L, RationalFunction(inv));
            if (w) {
                oc.fail(name + ": invariant " + inv.str() + " fails against " + X->name(*w));
            }
        }
        if (oc.pass)
            oc.note(name + ": " + std::to_string(L.invariants().size()) +
                    " invariants Poisson-central");

        CochainLadder ladder = make_gutt_ladder(b.workspace(), 4);
        bool assoc_ok = true;
        for_each_monomial_tuple(X->dim(), 3, 5, [&](const std::vector<Expvec>& es) {
            Polynomial u = monomial(X, es[0]);
            Polynomial v = monomial(X, es[1]);
            Polynomial w2 = monomial(X, es[2]);
            for (int k = 1; k <= 4; ++k) {
                Polynomial d = associator_defect(ladder, k, u, v, w2);
                if (!d.is_zero()) {
                    assoc_ok = false;
                    oc.fail(name + ": order " + std::to_string(k) + " residual on (" + u.str() +
                            ", " + v.str() + ", " + w2.str() + ") = " + d.str());
                    return false;
                }
            }
            return true;
        });
        if (assoc_ok) oc.note(name + ": associativity through order 4 at degree <= 5");
    }
    return oc;
}

// 11. The rational-coefficient correction: its coefficient table matches the
//     stored display verbatim, and the repaired cochain is tangential and
//     homogeneous of degree -2 as exact rational-function identities.
Outcome criterion11() {
    Outcome oc;
    const auto& b = g54();
    const LieAlgebra& L = b.algebra();
    const VarSpacePtr& X = b.space();

    auto e = [&](std::initializer_list<int> vars) {
        Expvec v(static_cast<size_t>(X->dim()), 0);
        for (int i : vars) v[static_cast<size_t>(i - 1)] += 1;
        return v;
    };
    const std::string r = "(x1^2 + x2^2 + x3^2)";
    MultiDiffOperator table(X, 1);
    table.add_term({e({4, 5, 3})}, parse_expression("x1*x2*x3/(3*" + r + ")", X));
    table.add_term({e({3, 5, 5})}, parse_expression("x3*x2^2/(6*" + r + ")", X));
    table.add_term({e({4, 5, 5})}, parse_expression("(-x2^3 + 2*x1^2*x2)/(6*" + r + ")", X));
    table.add_term({e({3, 4, 4})}, parse_expression("x1^2*x3/(6*" + r + ")", X));
    table.add_term({e({4, 4, 5})}, parse_expression("(x1^3 - 2*x1*x2^2)/(6*" + r + ")", X));
    table.add_term({e({5, 5, 5})}, parse_expression("x1*x2^2/(6*" + r + ")", X));
    table.add_term({e({4, 4, 4})}, parse_expression("-x1^2*x2/(6*" + r + ")", X));

    const MultiDiffOperator& shipped = b.t_prime_operator();
    if (shipped != table * b.kappa()) {
        oc.fail("third-order correction table deviates from the display");
        oc.note("shipped:\n" + operator_text(shipped));
    } else {
        oc.note("seven-term coefficient table matches verbatim (scaled by kappa = " +
                rat_str(b.kappa()) + ")");
    }

    Cochain cc = cochain_from(b.c2_kappa_operator());
    oc.absorb(is_tangential(L, cc, 4, "rational-coefficient repaired cochain"));
    oc.absorb(is_homogeneous(cc, X, 2, 4, "rational-coefficient repaired cochain"));
    return oc;
}

// 12. Property sweeps: the coboundary squares to zero on 100 random
//     operators; enveloping-algebra products are associative on 100 random
//     triples (with graded leading symbols on pairs); symmetrize/decompose
//     round trips through degree 8; all three algebras validate.
Outcome criterion12() {
    Outcome oc;
    const auto& b = g54();
    const auto& ws = b.workspace();
    const VarSpacePtr& X = b.space();
    std::mt19937 rng(20260815u);
    const auto dim = static_cast<size_t>(X->dim());

    bool dd_ok = true;
    for (int t = 0; t < 100 && dd_ok; ++t) {
        int arity = (t % 2) + 1;
        MultiDiffOperator op(X, arity);
        int terms = 1 + static_cast<int>(rng() % 2u);
        for (int tm = 0; tm < terms; ++tm) {
            IdxTuple idx;
            for (int s = 0; s < arity; ++s) {
                Expvec slot(dim, 0);
                int order = static_cast<int>(rng() % 3u);
                for (int d = 0; d < order; ++d) slot[rng() % dim] += 1;
                idx.push_back(std::move(slot));
            }
            Expvec ce(dim, 0);
            int cdeg = static_cast<int>(rng() % 3u);
            for (int d = 0; d < cdeg; ++d) ce[rng() % dim] += 1;
            auto scale = static_cast<int>(rng() % 5u) - 2;
            if (scale == 0) scale = 1;
            Polynomial coef(X);
            coef.add_term(ce, Rat(scale));
            op.add_term(idx, coef);
        }
        if (op.is_zero()) continue;
        MultiDiffOperator dd = hochschild_delta(hochschild_delta(op));
        if (!dd.is_zero()) {
            dd_ok = false;
            oc.fail("coboundary square nonzero on:\n" + operator_text(op));
        }
    }
    if (dd_ok) oc.note("coboundary squares to zero on 100 seeded random operators");

    auto random_poly = [&] {
        Polynomial p(X);
        int terms = 1 + static_cast<int>(rng() % 2u);
        for (int t = 0; t < terms; ++t) {
            Expvec e(dim, 0);
            int deg = 1 + static_cast<int>(rng() % 3u);
            for (int d = 0; d < deg; ++d) e[rng() % dim] += 1;
            auto scale = static_cast<int>(rng() % 7u) - 3;
            if (scale == 0) scale = 1;
            p.add_term(e, Rat(scale));
        }
        return p;
    };
    bool assoc_ok = true;
    for (int t = 0; t < 100 && assoc_ok; ++t) {
        PBWElement a = ws->symmetrize(random_poly());
        PBWElement bb = ws->symmetrize(random_poly());
        PBWElement c = ws->symmetrize(random_poly());
        if (ws->uea_mul(ws->uea_mul(a, bb), c) != ws->uea_mul(a, ws->uea_mul(bb, c))) {
            assoc_ok = false;
            oc.fail("enveloping-product associativity fails on random triple " +
                    std::to_string(t));
        }
    }
    if (assoc_ok) oc.note("enveloping products associative on 100 seeded random triples");

    bool symbol_ok = true;
    for (int t = 0; t < 100 && symbol_ok; ++t) {
        Polynomial p = random_poly();
        Polynomial q = random_poly();
        auto layers = ws->graded_decompose(ws->uea_mul(ws->symmetrize(p), ws->symmetrize(q)));
        Polynomial pq = p * q;
        int d = pq.degree();
        Polynomial pq_top(X);
        for (const auto& [e, c] : pq.terms()) {
            int deg = 0;
            for (int exp : e) deg += exp;
            if (deg == d) pq_top.add_term(e, c);
        }
        auto top = layers.find(d);
        Polynomial lead = top == layers.end() ? Polynomial(X) : top->second;
        if (lead != pq_top) {
            symbol_ok = false;
            oc.fail("leading symbol of a product deviates on random pair " + std::to_string(t));
        }
    }
    if (symbol_ok) oc.note("leading symbols multiply on 100 seeded random pairs");

    bool round_ok = true;
    for_each_monomial_tuple(X->dim(), 1, 8, [&](const std::vector<Expvec>& es) {
        Polynomial m = monomial(X, es[0]);
        if (ws->sigma_inverse(ws->symmetrize(m)) != m) {
            round_ok = false;
            oc.fail("symmetrize/decompose round trip fails on " + m.str());
            return false;
        }
        return true;
    });
    if (round_ok) oc.note("symmetrize/decompose round trips on all monomials of degree <= 8");

    for (const std::string name : {"g54", "g612", "g614"}) {
        FixtureBundle fb = load_fixture(name);
        ValidationReport v = fb.algebra().validate();
        if (!v.ok) {
            for (const auto& issue : v.issues)
                oc.fail(name + ": " + issue.check + ": " + issue.detail);
        }
    }
    if (oc.pass) oc.note("all three algebras validate (antisymmetry, jacobi, invariants)");
    return oc;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries = {
        {1, "transported-product associativity through order 4 (degree <= 6)", criterion1},
        {2, "order-1 cochain equals the Poisson bracket (degree <= 5)", criterion2},
        {3, "invariant-slot extraction matches the stored display up to a constant", criterion3},
        {4, "raw order-2 cochain fails tangentiality with a degree <= 2 witness", criterion4},
        {5, "corrected order-2 cochain: tangential, homogeneous -2, kills the invariant slot",
         criterion5},
        {6, "chart round trips, pushed cochain matches, reflection series is the substitution",
         criterion6},
        {7, "corrected order-2 cochain is correct of degree -2 in the chart", criterion7},
        {8, "order-3 coboundary equation solves at order bound 6, degree 6", criterion8},
        {9, "distinct order-3 solutions differ by a unary coboundary realized as a gauge",
         criterion9_full},
        {10, "six-dimensional examples: central invariants and associativity (degree <= 5)",
         criterion10},
        {11, "rational-coefficient correction table verbatim; repaired cochain checks",
         criterion11},
        {12, "property sweeps: coboundary square, enveloping products, round trips, validation",
         criterion12},
    };

    int failed = 0;
    for (const auto& entry : entries) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome oc;
        try {
            oc = entry.run();
        } catch (const std::exception& ex) {
            oc.pass = false;
            oc.notes.push_back(std::string("exception: ") + ex.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cout << (oc.pass ? "[PASS]" : "[FAIL]") << " criterion " << entry.id << ": "
                  << entry.title << "  [" << ms << " ms]\n";
        for (const auto& note : oc.notes) std::cout << "    " << note << "\n";
        std::cout.flush();
        if (!oc.pass) ++failed;
    }
    if (failed == 0) {
        std::cout << "acceptance: all 12 criteria passed\n";
    } else {
        std::cout << "acceptance: " << failed << " of 12 criteria failed\n";
    }
    return failed == 0 ? 0 : 1;
}
