// Command-line workbench: load an algebra description, compute brackets and
// truncated star products, and run the named verification suites.
//
// Exit codes: 0 success, 1 verification failure (witness printed), 2
// malformed input (bad file, bad expression, unsupported request).

#include "starprod/cobsolve.hpp"
#include "starprod/fixtures.hpp"
#include "starprod/ladder.hpp"
#include "starprod/parse.hpp"
#include "starprod/report.hpp"
#include "starprod/specfile.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace {

using namespace starprod;

struct LoadedInput {
    AlgebraSpec spec;
    std::optional<FixtureBundle> bundle; // set when the input is a packaged example
    std::shared_ptr<GuttWorkspace> ws;
    std::string label;
};

// The positional argument is either a path to a .lie file or the bare name
// of a packaged example. Bare names and dangling relative paths resolve
// against the data directory. Packaged names load their companion operator
// files from the same directory.
LoadedInput load_input(const std::string& arg, std::string data_dir) {
    namespace fs = std::filesystem;
    if (data_dir.empty()) data_dir = STARPROD_DATA_DIR;

    std::string dir;
    std::string stem;
    const bool looks_like_path = arg.find('/') != std::string::npos ||
                                 (arg.size() > 4 && arg.substr(arg.size() - 4) == ".lie") ||
                                 fs::exists(arg);
    if (looks_like_path) {
        fs::path p(arg);
        if (!fs::exists(p)) {
            fs::path alt = fs::path(data_dir) / p.filename();
            if (!fs::exists(alt))
                throw std::runtime_error("cannot open algebra file '" + arg + "'");
            p = alt;
        }
        dir = p.parent_path().empty() ? std::string(".") : p.parent_path().string();
        stem = p.stem().string();
    } else {
        dir = data_dir;
        stem = arg;
    }

    LoadedInput in;
    in.label = stem;
    static const std::set<std::string> packaged = {"g54", "g612", "g614"};
    if (packaged.count(stem)) {
        in.bundle = load_fixture(stem, dir);
        in.spec.algebra = in.bundle->algebra_ptr();
        if (in.bundle->has_chart()) in.spec.chart = in.bundle->chart();
        if (in.bundle->has_corrections()) in.spec.region = in.bundle->region().nonvanishing;
        in.ws = in.bundle->workspace();
    } else {
        in.spec = load_algebra_spec((fs::path(dir) / (stem + ".lie")).string());
        in.ws = std::make_shared<GuttWorkspace>(*in.spec.algebra);
    }
    return in;
}

int cmd_validate(const LoadedInput& in) {
    bool ok = true;
    ValidationReport v = in.spec.algebra->validate();
    std::cout << (v.ok ? "[PASS] " : "[FAIL] ")
              << "algebra structure (antisymmetry, jacobi, triangular, invariant centrality)\n";
    for (const auto& issue : v.issues) std::cout << "  " << issue.check << ": " << issue.detail << "\n";
    ok = ok && v.ok;
    if (in.spec.chart) {
        ValidationReport c = validate_chart(*in.spec.algebra, *in.spec.chart);
        std::cout << (c.ok ? "[PASS] " : "[FAIL] ")
                  << "chart round trips and canonical relations\n";
        for (const auto& issue : c.issues)
            std::cout << "  " << issue.check << ": " << issue.detail << "\n";
        ok = ok && c.ok;
    }
    if (in.spec.region) std::cout << "region: " << in.spec.region->str() << " != 0\n";
    return ok ? 0 : 1;
}

int cmd_bracket(const LoadedInput& in, const std::string& u, const std::string& v) {
    const VarSpacePtr& X = in.spec.algebra->space();
    RationalFunction ru = parse_expression(u, X);
    RationalFunction rv = parse_expression(v, X);
    std::cout << poisson(*in.spec.algebra, ru, rv).str() << "\n";
    return 0;
}

int cmd_star(const LoadedInput& in, const std::string& u, const std::string& v, int order) {
    const VarSpacePtr& X = in.spec.algebra->space();
    Polynomial pu = parse_polynomial(u, X);
    Polynomial pv = parse_polynomial(v, X);
    CochainLadder ladder = make_gutt_ladder(in.ws, order);
    std::cout << star_truncated(ladder, pu, pv, order).str() << "\n";
    return 0;
}

int cmd_invariant_check(const LoadedInput& in, const std::string& expr) {
    const LieAlgebra& L = *in.spec.algebra;
    const VarSpacePtr& X = L.space();
    std::vector<RationalFunction> targets;
    if (!expr.empty()) {
        targets.push_back(parse_expression(expr, X));
    } else {
        for (const auto& inv : L.invariants()) targets.emplace_back(inv);
        if (targets.empty()) {
            std::cout << "no invariants declared\n";
            return 0;
        }
    }
    bool ok = true;
    for (const auto& f : targets) {
        auto w = poisson_noncentral_witness(L, f);
        if (!w) {
            std::cout << "[PASS] " << f.str() << " is Poisson-central\n";
        } else {
            ok = false;
            Expvec e(static_cast<size_t>(X->dim()), 0);
            e[static_cast<size_t>(*w)] = 1;
            Polynomial xi(X);
            xi.add_term(e, Rat(1));
            RationalFunction b = poisson(L, f, RationalFunction(xi));
            std::cout << "[FAIL] " << f.str() << " is not Poisson-central: {., " << X->name(*w)
                      << "} = " << b.str() << "\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_verify(const LoadedInput& in, const std::string& suite, int degree, ReportFormat format,
               unsigned seed) {
    const bool all = suite == "all";
    auto corrections_available = [&](const char* which) {
        if (in.bundle && in.bundle->has_corrections()) return true;
        if (all) {
            std::cerr << "note: skipping " << which
                      << " suite: this input carries no correction data\n";
            return false;
        }
        throw std::domain_error(std::string(which) +
                                " suite needs an input with packaged correction data");
    };

    std::vector<VerificationReport> reports;
    if (all || suite == "gutt") reports.push_back(gutt_suite(in.ws, degree));
    if (all || suite == "grading") reports.push_back(grading_suite(in.ws, degree));
    if ((all || suite == "tangential") && corrections_available("tangential"))
        reports.push_back(tangential_suite(*in.bundle, degree));
    if ((all || suite == "chart") && corrections_available("chart"))
        reports.push_back(chart_suite(*in.bundle, degree));
    if (all || suite == "cohomology") reports.push_back(cohomology_suite(in.ws, degree, seed));

    std::cout << emit_reports(reports, format);
    for (const auto& r : reports)
        if (!r.pass()) return 1;
    return 0;
}

int cmd_solve(const LoadedInput& in, int n, int order_bound, int degree, unsigned seed,
              ReportFormat format) {
    if (n < 2 || n > 3)
        throw std::invalid_argument("solve-cn supports n = 2 or n = 3");
    const LieAlgebra& L = *in.spec.algebra;
    const VarSpacePtr& X = L.space();

    CochainLadder ladder = make_gutt_ladder(in.ws, n - 1);
    if (n >= 3) {
        if (!in.bundle || !in.bundle->has_corrections())
            throw std::domain_error("solve-cn with n = 3 needs the corrected order-2 cochain, "
                                    "which only packaged correction data provides");
        ladder.set_entry(2, corrected_c2(*in.bundle));
    }
    CochainFn defect = defect_evaluator(ladder, n);

    SolveOptions opt;
    opt.order_bound = order_bound;
    opt.degree_bound = degree;
    opt.unknown_arity = 2;
    opt.constraints.parity = true;
    // No finite-order tangential order-2 cochain exists (the corrections form
    // an infinite series), so the tangentiality side condition only makes
    // sense from order 3 on, and only when invariants are declared.
    opt.constraints.tangential = n >= 3 && !L.invariants().empty();
    SolveOutcome outcome = solve_coboundary(L, defect, n, opt);

    VerificationReport report;
    report.suite = "solve-cn";
    report.config.emplace_back("input", in.label);
    report.config.emplace_back("n", std::to_string(n));
    report.config.emplace_back("order-bound", std::to_string(order_bound));
    report.config.emplace_back("degree", std::to_string(degree));
    report.config.emplace_back("seed", std::to_string(seed));
    report.config.emplace_back("parity", "on");
    report.config.emplace_back("tangential", opt.constraints.tangential ? "on" : "off");
    report.config.emplace_back("solve", outcome.detail);
    if (outcome.feasible && outcome.solution)
        report.config.emplace_back("solution", operator_text(*outcome.solution));

    auto timed = [&report](CheckReport c) {
        report.checks.push_back(TimedCheck{std::move(c), 0});
    };

    {
        CheckReport c;
        c.name = "coboundary equation is solvable on the training grid";
        c.grid = "all monomial triples";
        c.degree_bound = degree;
        c.pass = outcome.feasible;
        if (!c.pass) c.witness = CheckWitness{{}, outcome.detail};
        timed(std::move(c));
    }
    if (outcome.feasible && outcome.solution) {
        const MultiDiffOperator& sol = *outcome.solution;
        timed(verify_coboundary_solution(defect, sol, degree + 2, 25, seed, "solved cochain"));
        const int post = std::min(degree, 5);
        Cochain cc = cochain_from(sol);
        timed(is_homogeneous(cc, X, n, post, "solved cochain"));
        if (opt.constraints.tangential) timed(is_tangential(L, cc, post, "solved cochain"));
        {
            CheckReport c;
            c.name = std::string("solved cochain has slot-swap parity ") +
                     (n % 2 == 0 ? "+1" : "-1");
            c.grid = "all monomial pairs";
            c.degree_bound = post;
            const Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
            for_each_monomial_tuple(X->dim(), 2, post, [&](const std::vector<Expvec>& es) {
                Polynomial mu(X), mv(X);
                mu.add_term(es[0], Rat(1));
                mv.add_term(es[1], Rat(1));
                RationalFunction d = sol.apply({RationalFunction(mu), RationalFunction(mv)}) -
                                     sol.apply({RationalFunction(mv), RationalFunction(mu)}) * sign;
                if (!d.is_zero()) {
                    c.pass = false;
                    c.witness = CheckWitness{{mu.str(), mv.str()}, d.str()};
                    return false;
                }
                return true;
            });
            timed(std::move(c));
        }
    }

    std::cout << emit_report(report, format);
    return report.pass() ? 0 : 1;
}

ReportFormat parse_format(const std::string& f) {
    return f == "json" ? ReportFormat::json : ReportFormat::text;
}

int run(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for star products on duals of nilpotent Lie algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string data_dir;
    app.add_option("--data-dir", data_dir,
                   "directory holding packaged .lie and operator files (default: built-in)");

    // validate
    std::string va_spec;
    auto* va = app.add_subcommand("validate", "structural checks on an algebra description");
    va->add_option("spec", va_spec, "algebra file or packaged name")->required();

    // bracket
    std::string br_spec, br_u, br_v;
    auto* br = app.add_subcommand("bracket", "Poisson bracket of two expressions");
    br->add_option("spec", br_spec, "algebra file or packaged name")->required();
    br->add_option("-u", br_u, "first expression")->required();
    br->add_option("-v", br_v, "second expression")->required();

    // star
    std::string st_spec, st_u, st_v, st_product = "gutt";
    int st_order = 2;
    auto* st = app.add_subcommand("star", "truncated star product of two polynomials");
    st->add_option("spec", st_spec, "algebra file or packaged name")->required();
    st->add_option("-u", st_u, "left factor")->required();
    st->add_option("-v", st_v, "right factor")->required();
    st->add_option("--order", st_order, "truncation order (default 2)")->check(CLI::Range(0, 8));
    st->add_option("--product", st_product, "product family (gutt)")
        ->check(CLI::IsMember({"gutt"}));

    // invariant-check
    std::string ic_spec, ic_expr;
    auto* ic = app.add_subcommand("invariant-check",
                                  "check declared invariants (or one expression) for centrality");
    ic->add_option("spec", ic_spec, "algebra file or packaged name")->required();
    ic->add_option("-q,--expr", ic_expr, "expression to check instead of the declared invariants");

    // verify
    std::string ve_spec, ve_suite = "all", ve_format = "text";
    int ve_degree = -1;
    unsigned ve_seed = 20260815u;
    auto* ve = app.add_subcommand("verify", "run a named verification suite");
    ve->add_option("spec", ve_spec, "algebra file or packaged name")->required();
    ve->add_option("--suite", ve_suite, "gutt|tangential|grading|chart|cohomology|all")
        ->check(CLI::IsMember({"gutt", "tangential", "grading", "chart", "cohomology", "all"}));
    ve->add_option("--degree", ve_degree,
                   "total-degree bound for the check grids (default: per suite)")
        ->check(CLI::Range(-1, 10));
    ve->add_option("--format", ve_format, "text|json")->check(CLI::IsMember({"text", "json"}));
    ve->add_option("--seed", ve_seed, "seed for randomized checks");

    // solve-cn
    std::string so_spec, so_format = "text";
    int so_n = 3, so_order = 6, so_degree = 6;
    unsigned so_seed = 20260815u;
    auto* so = app.add_subcommand("solve-cn",
                                  "solve the order-n coboundary equation for the next cochain");
    so->add_option("spec", so_spec, "algebra file or packaged name")->required();
    so->add_option("--n", so_n, "ladder order to solve for (2 or 3)")->required();
    so->add_option("--order-bound", so_order, "per-slot derivative order cap (default 6)")
        ->check(CLI::Range(1, 8));
    so->add_option("--degree", so_degree, "training degree bound (default 6)")
        ->check(CLI::Range(1, 10));
    so->add_option("--seed", so_seed, "seed for the out-of-sample re-check");
    so->add_option("--format", so_format, "text|json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (va->parsed()) return cmd_validate(load_input(va_spec, data_dir));
    if (br->parsed()) return cmd_bracket(load_input(br_spec, data_dir), br_u, br_v);
    if (st->parsed()) return cmd_star(load_input(st_spec, data_dir), st_u, st_v, st_order);
    if (ic->parsed()) return cmd_invariant_check(load_input(ic_spec, data_dir), ic_expr);
    if (ve->parsed())
        return cmd_verify(load_input(ve_spec, data_dir), ve_suite, ve_degree,
                          parse_format(ve_format), ve_seed);
    if (so->parsed())
        return cmd_solve(load_input(so_spec, data_dir), so_n, so_order, so_degree, so_seed,
                         parse_format(so_format));
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const starprod::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const starprod::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
