#include "starprod/report.hpp"

#include "starprod/cobsolve.hpp"
#include "starprod/ladder.hpp"

#include "json.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <utility>

namespace starprod {

namespace {

// Accumulates checks with wall-clock timing.
class SuiteRun {
public:
    explicit SuiteRun(std::string suite) { m_report.suite = std::move(suite); }

    void config(std::string key, std::string value) {
        m_report.config.emplace_back(std::move(key), std::move(value));
    }

    void add(const std::function<CheckReport()>& run) {
        auto t0 = std::chrono::steady_clock::now();
        CheckReport check = run();
        auto t1 = std::chrono::steady_clock::now();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        m_report.checks.push_back(TimedCheck{std::move(check), ms});
        m_report.total_millis += ms;
    }

    VerificationReport take() { return std::move(m_report); }

private:
    VerificationReport m_report;
};

Polynomial monomial(const VarSpacePtr& space, const Expvec& e) {
    Polynomial p(space);
    p.add_term(e, Rat(1));
    return p;
}

// Evaluates `defect` on every monomial tuple of total degree <= degree; the
// first nonzero value fails the check with the tuple as witness.
CheckReport monomial_grid_check(std::string name, std::string grid, const VarSpacePtr& space,
                                int arity, int degree,
                                const std::function<Polynomial(const std::vector<Polynomial>&)>& defect) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.grid = std::move(grid);
    rep.degree_bound = degree;
    for_each_monomial_tuple(space->dim(), arity, degree, [&](const std::vector<Expvec>& es) {
        std::vector<Polynomial> args;
        args.reserve(es.size());
        for (const auto& e : es) args.push_back(monomial(space, e));
        Polynomial d = defect(args);
        if (!d.is_zero()) {
            rep.pass = false;
            CheckWitness w;
            for (const auto& a : args) w.inputs.push_back(a.str());
            w.discrepancy = d.str();
            rep.witness = std::move(w);
            return false;
        }
        return true;
    });
    return rep;
}

// Same grid, rational-function-valued defect.
CheckReport monomial_grid_check_rf(std::string name, std::string grid, const VarSpacePtr& space,
                                   int arity, int degree,
                                   const std::function<RationalFunction(const std::vector<Polynomial>&)>& defect) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.grid = std::move(grid);
    rep.degree_bound = degree;
    for_each_monomial_tuple(space->dim(), arity, degree, [&](const std::vector<Expvec>& es) {
        std::vector<Polynomial> args;
        args.reserve(es.size());
        for (const auto& e : es) args.push_back(monomial(space, e));
        RationalFunction d = defect(args);
        if (!d.is_zero()) {
            rep.pass = false;
            CheckWitness w;
            for (const auto& a : args) w.inputs.push_back(a.str());
            w.discrepancy = d.str();
            rep.witness = std::move(w);
            return false;
        }
        return true;
    });
    return rep;
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        out << v[i];
    }
    return out.str();
}

} // namespace

bool VerificationReport::pass() const {
    for (const auto& tc : checks)
        if (!tc.check.pass) return false;
    return true;
}

namespace {

void write_text_report(std::ostream& out, const VerificationReport& report) {
    out << "suite: " << report.suite << "\n";
    for (const auto& [k, v] : report.config) {
        if (v.find('\n') == std::string::npos) {
            out << "  " << k << " = " << v << "\n";
        } else {
            out << "  " << k << " =\n";
            std::istringstream lines(v);
            std::string line;
            while (std::getline(lines, line)) out << "    " << line << "\n";
        }
    }
    for (const auto& tc : report.checks) {
        std::string s = tc.check.str();
        auto nl = s.find('\n');
        if (nl == std::string::npos) {
            out << s << "  [" << tc.millis << " ms]\n";
        } else {
            out << s.substr(0, nl) << "  [" << tc.millis << " ms]" << s.substr(nl) << "\n";
        }
    }
    out << "status: " << (report.pass() ? "PASS" : "FAIL") << "  (" << report.checks.size()
        << " checks, " << report.total_millis << " ms)\n";
}

// JSON carries no timings: identical runs must serialize byte-identically.
nlohmann::ordered_json report_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& tc : report.checks) {
        nlohmann::ordered_json c;
        c["id"] = tc.check.name;
        c["grid"] = tc.check.grid;
        c["degree"] = tc.check.degree_bound;
        c["status"] = tc.check.pass ? "pass" : "fail";
        if (tc.check.witness) {
            nlohmann::ordered_json w;
            w["inputs"] = tc.check.witness->inputs;
            w["discrepancy"] = tc.check.witness->discrepancy;
            c["witness"] = w;
        }
        checks.push_back(c);
    }
    j["checks"] = checks;
    j["status"] = report.pass() ? "pass" : "fail";
    return j;
}

} // namespace

std::string emit_report(const VerificationReport& report, ReportFormat format) {
    if (format == ReportFormat::text) {
        std::ostringstream out;
        write_text_report(out, report);
        return out.str();
    }
    return report_json(report).dump(2) + "\n";
}

std::string emit_reports(const std::vector<VerificationReport>& reports, ReportFormat format) {
    if (reports.size() == 1) return emit_report(reports.front(), format);
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass();
    if (format == ReportFormat::text) {
        std::ostringstream out;
        for (size_t i = 0; i < reports.size(); ++i) {
            if (i) out << "\n";
            write_text_report(out, reports[i]);
        }
        out << "\noverall: " << (all_pass ? "PASS" : "FAIL") << "  (" << reports.size()
            << " suites)\n";
        return out.str();
    }
    nlohmann::ordered_json j;
    nlohmann::ordered_json suites = nlohmann::ordered_json::array();
    for (const auto& r : reports) suites.push_back(report_json(r));
    j["suites"] = suites;
    j["status"] = all_pass ? "pass" : "fail";
    return j.dump(2) + "\n";
}

VerificationReport gutt_suite(const std::shared_ptr<GuttWorkspace>& ws, int degree) {
    if (degree < 0) degree = 4;
    const LieAlgebra& L = ws->algebra();
    const VarSpacePtr& X = L.space();
    SuiteRun run("gutt");
    run.config("algebra", L.name());
    run.config("degree", std::to_string(degree));
    run.config("ladder-order", "3");

    CochainLadder ladder = make_gutt_ladder(ws, 3);

    run.add([&] {
        return monomial_grid_check(
            "order-1 cochain equals the Poisson bracket", "all monomial pairs", X, 2, degree + 1,
            [&](const std::vector<Polynomial>& a) {
                return ws->gutt_cochain(1, a[0], a[1]) - poisson(L, a[0], a[1]);
            });
    });
    for (int k = 1; k <= 3; ++k) {
        run.add([&, k] {
            return monomial_grid_check(
                "associativity residual vanishes at order " + std::to_string(k),
                "all monomial triples", X, 3, degree, [&](const std::vector<Polynomial>& a) {
                    return associator_defect(ladder, k, a[0], a[1], a[2]);
                });
        });
    }
    run.add([&] {
        Polynomial one(X);
        one.add_term(Expvec(static_cast<size_t>(X->dim()), 0), Rat(1));
        return monomial_grid_check(
            "unit slots are inert above order zero", "all monomials", X, 1, degree,
            [&](const std::vector<Polynomial>& a) {
                for (int n = 1; n <= 3; ++n) {
                    Polynomial left = ws->gutt_cochain(n, one, a[0]);
                    if (!left.is_zero()) return left;
                    Polynomial right = ws->gutt_cochain(n, a[0], one);
                    if (!right.is_zero()) return right;
                }
                return Polynomial(X);
            });
    });
    return run.take();
}

VerificationReport grading_suite(const std::shared_ptr<GuttWorkspace>& ws, int degree) {
    if (degree < 0) degree = 6;
    const LieAlgebra& L = ws->algebra();
    const VarSpacePtr& X = L.space();
    SuiteRun run("grading");
    run.config("algebra", L.name());
    run.config("degree", std::to_string(degree));

    auto weights = grading_weights(L);
    if (weights) run.config("weights", join_ints(*weights));

    run.add([&] {
        CheckReport rep;
        rep.name = "bracket-compatible positive weights exist";
        rep.grid = "basis bracket table";
        rep.degree_bound = 1;
        rep.pass = weights.has_value();
        if (!rep.pass)
            rep.witness = CheckWitness{{}, "no positive weight assignment satisfies every bracket"};
        return rep;
    });
    for (int n = 0; n <= 3; ++n) {
        run.add([&, n] {
            Cochain c = cochain_from(2, [ws, n](const std::vector<Polynomial>& a) {
                return ws->gutt_cochain(n, a[0], a[1]);
            });
            return is_homogeneous(c, X, n, degree,
                                  "order-" + std::to_string(n) + " transported cochain");
        });
    }
    for (int n = 1; n <= 3; ++n) {
        run.add([&, n] {
            Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
            return monomial_grid_check(
                "order-" + std::to_string(n) + " cochain has slot-swap parity " +
                    (n % 2 == 0 ? std::string("+1") : std::string("-1")),
                "all monomial pairs", X, 2, degree, [&, n, sign](const std::vector<Polynomial>& a) {
                    return ws->gutt_cochain(n, a[0], a[1]) - ws->gutt_cochain(n, a[1], a[0]) * sign;
                });
        });
    }
    return run.take();
}

VerificationReport tangential_suite(const FixtureBundle& bundle, int degree) {
    if (degree < 0) degree = 6;
    const LieAlgebra& L = bundle.algebra();
    const VarSpacePtr& X = bundle.space();
    const auto& ws = bundle.workspace();
    SuiteRun run("tangential");
    run.config("fixture", bundle.name());
    run.config("degree", std::to_string(degree));
    run.config("kappa", rat_str(bundle.kappa()));

    BilinearCochain corrected = corrected_c2(bundle);
    Cochain cc = cochain_from(corrected);

    run.add([&] { return is_tangential(L, cc, degree, "corrected order-2 cochain"); });
    run.add([&] { return is_homogeneous(cc, X, 2, degree, "corrected order-2 cochain"); });
    run.add([&] {
        Polynomial inv = bundle.quadratic_invariant();
        return monomial_grid_check(
            "corrected order-2 cochain annihilates the quadratic-invariant slot", "all monomials",
            X, 1, degree, [&](const std::vector<Polynomial>& a) {
                Polynomial left = corrected(inv, a[0]);
                if (!left.is_zero()) return left;
                return corrected(a[0], inv);
            });
    });
    run.add([&] {
        Cochain raw = cochain_from(2, [ws](const std::vector<Polynomial>& a) {
            return ws->gutt_cochain(2, a[0], a[1]);
        });
        CheckReport inner = is_tangential(L, raw, 2, "raw order-2 cochain");
        CheckReport rep;
        rep.name = "raw order-2 cochain fails tangentiality (witness shows the defect)";
        rep.grid = inner.grid;
        rep.degree_bound = inner.degree_bound;
        rep.pass = !inner.pass;
        if (inner.pass) {
            rep.witness = CheckWitness{{}, "no tangentiality defect found though one was claimed"};
        } else {
            rep.witness = inner.witness;
        }
        return rep;
    });
    return run.take();
}

VerificationReport chart_suite(const FixtureBundle& bundle, int degree) {
    if (degree < 0) degree = 4;
    const LieAlgebra& L = bundle.algebra();
    const VarSpacePtr& X = bundle.space();
    const Chart& chart = bundle.chart();
    const auto& ws = bundle.workspace();
    SuiteRun run("chart");
    run.config("fixture", bundle.name());
    run.config("degree", std::to_string(degree));
    run.config("kappa", rat_str(bundle.kappa()));

    run.add([&] {
        ValidationReport v = validate_chart(L, chart);
        CheckReport rep;
        rep.name = "chart round trips and satisfies the canonical relations";
        rep.grid = "coordinates and coordinate pairs";
        rep.degree_bound = 1;
        rep.pass = v.ok;
        if (!v.ok && !v.issues.empty())
            rep.witness = CheckWitness{{}, v.issues.front().check + ": " + v.issues.front().detail};
        return rep;
    });
    run.add([&] {
        const MultiDiffOperator& chart_op = bundle.c2g_chart_operator();
        return monomial_grid_check_rf(
            "pushed order-2 cochain matches the stored chart-space form", "all monomial pairs", X,
            2, degree, [&](const std::vector<Polynomial>& a) {
                RationalFunction lhs =
                    chart_push(chart, RationalFunction(ws->gutt_cochain(2, a[0], a[1])));
                RationalFunction rhs = chart_op.apply(
                    {chart_push(chart, RationalFunction(a[0])), chart_push(chart, RationalFunction(a[1]))});
                return lhs - rhs;
            });
    });
    run.add([&] {
        const OperatorSeries& sigma3 = bundle.sigma3_series();
        auto x3 = X->index("x3");
        std::vector<Polynomial> images;
        for (int i = 0; i < X->dim(); ++i) {
            Expvec e(static_cast<size_t>(X->dim()), 0);
            e[static_cast<size_t>(i)] = 1;
            Polynomial xi = monomial(X, e);
            images.push_back(x3 && *x3 == i ? -xi : xi);
        }
        return monomial_grid_check(
            "x3 reflection series equals direct substitution", "all monomials", X, 1, 8,
            [&](const std::vector<Polynomial>& a) {
                return sigma3.apply({a[0]}) - substitute(a[0], images);
            });
    });
    run.add([&] {
        const OperatorSeries& t_tilde = bundle.t_tilde_series();
        const VarSpacePtr& C = chart.cspace;
        auto q1 = C->index("q1");
        auto l3 = C->index("lambda3");
        CheckReport rep;
        rep.name = "chart-space correction truncates to zero below its leading order";
        rep.grid = "chart monomials with q-degree + 2*lambda3-degree < 2";
        rep.degree_bound = degree;
        for_each_monomial_tuple(C->dim(), 1, degree, [&](const std::vector<Expvec>& es) {
            const Expvec& e = es[0];
            int qd = q1 ? e[static_cast<size_t>(*q1)] : 0;
            int ld = l3 ? e[static_cast<size_t>(*l3)] : 0;
            if (qd + 2 * ld >= 2) return true;
            Polynomial m = monomial(C, e);
            Polynomial out = t_tilde.apply({m});
            if (!out.is_zero()) {
                rep.pass = false;
                rep.witness = CheckWitness{{m.str()}, out.str()};
                return false;
            }
            return true;
        });
        return rep;
    });
    return run.take();
}

VerificationReport cohomology_suite(const std::shared_ptr<GuttWorkspace>& ws, int degree,
                                    unsigned seed) {
    if (degree < 0) degree = 4;
    const LieAlgebra& L = ws->algebra();
    const VarSpacePtr& X = L.space();
    SuiteRun run("cohomology");
    run.config("algebra", L.name());
    run.config("degree", std::to_string(degree));
    run.config("seed", std::to_string(seed));
    run.config("random-operators", "100");

    run.add([&] {
        CheckReport rep;
        rep.name = "coboundary applied twice is zero";
        rep.grid = "100 seeded random operators";
        rep.degree_bound = 2;
        std::mt19937 rng(seed);
        auto dim = static_cast<size_t>(X->dim());
        for (int t = 0; t < 100; ++t) {
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
                rep.pass = false;
                rep.witness = CheckWitness{{operator_text(op)}, operator_text(dd)};
                return rep;
            }
        }
        return rep;
    });

    CochainLadder short_ladder = make_gutt_ladder(ws, 1);
    CochainFn defect2 = defect_evaluator(short_ladder, 2);
    SolveOptions opt;
    opt.order_bound = 2;
    opt.degree_bound = degree;
    opt.unknown_arity = 2;
    opt.constraints.parity = true;
    opt.constraints.tangential = false;
    SolveOutcome outcome = solve_coboundary(L, defect2, 2, opt);
    run.config("order-2-solve", outcome.detail);

    run.add([&] {
        CheckReport rep;
        rep.name = "order-2 associativity defect is a coboundary on the training grid";
        rep.grid = "all monomial triples";
        rep.degree_bound = degree;
        rep.pass = outcome.feasible;
        if (!rep.pass) rep.witness = CheckWitness{{}, outcome.detail};
        return rep;
    });
    run.add([&] {
        if (!outcome.feasible) {
            CheckReport rep;
            rep.name = "solved order-2 cochain survives out-of-sample spot checks";
            rep.grid = "pure powers and seeded random triples";
            rep.degree_bound = degree + 2;
            rep.pass = false;
            rep.witness = CheckWitness{{}, "no solution to re-check"};
            return rep;
        }
        return verify_coboundary_solution(defect2, *outcome.solution, degree + 2, 20, seed,
                                          "solved order-2 cochain");
    });
    run.add([&] {
        const LieAlgebra* Lp = &L;
        CochainFn skew = [Lp](const std::vector<RationalFunction>& a) {
            return poisson(*Lp, a[0], a[1]);
        };
        SolveOptions o1;
        o1.order_bound = 2;
        o1.degree_bound = std::min(degree, 3);
        o1.unknown_arity = 1;
        o1.constraints.tangential = false;
        SolveOutcome oc = solve_coboundary(L, skew, 1, o1);
        CheckReport rep;
        rep.name = "the skew order-1 defect admits no unary primitive";
        rep.grid = "all monomial pairs";
        rep.degree_bound = o1.degree_bound;
        rep.pass = !oc.feasible;
        if (oc.feasible) {
            rep.witness =
                CheckWitness{{oc.solution ? operator_text(*oc.solution) : std::string("(none)")},
                             "a unary primitive was found though none can exist"};
        } else {
            rep.witness = CheckWitness{{}, oc.detail};
        }
        return rep;
    });
    return run.take();
}

} // namespace starprod
