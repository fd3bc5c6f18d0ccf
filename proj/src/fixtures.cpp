#include "starprod/fixtures.hpp"

#include "starprod/coboundary.hpp"
#include "starprod/specfile.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace starprod {

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int need_var(const VarSpacePtr& space, const std::string& var) {
    const auto i = space->index(var);
    if (!i) throw std::runtime_error("fixture space has no variable '" + var + "'");
    return *i;
}

Polynomial monomial(const VarSpacePtr& space, const Expvec& e, const Rat& coef) {
    Polynomial p(space);
    p.add_term(e, coef);
    return p;
}

// (-1)^n 2^(n-3) / (6 (n-2)!), the weight of the n-th correction term.
Rat series_weight(int n) {
    Rat c = Rat(BigInt(1) << (n - 3)) / (Rat(6) * Rat(factorial(n - 2)));
    return (n % 2 == 0) ? c : -c;
}

// Unary series on x-space whose coboundary repairs tangentiality: term n is
//
//   weight(n) x3^(n-4) (x2^2 d3^(n-2) d55 + x1^2 d3^(n-2) d44
//                       + 2 x1 x2 d3^(n-2) d45),        n >= 4.
//
// Term n needs n-2 derivatives in x3, so inputs of x3-degree d are killed
// beyond n = d + 2.
OperatorSeries make_t_series(const VarSpacePtr& X, const Rat& kappa) {
    const int x1 = need_var(X, "x1"), x2 = need_var(X, "x2"), x3 = need_var(X, "x3"),
              x4 = need_var(X, "x4"), x5 = need_var(X, "x5");
    const auto dim = static_cast<size_t>(X->dim());

    auto gen = [=](int n) {
        MultiDiffOperator op(X, 1);
        const Rat w = series_weight(n) * kappa;
        auto add = [&](int da, int db, int ca, int cb, const Rat& scale) {
            Expvec idx(dim, 0);
            idx[static_cast<size_t>(x3)] = n - 2;
            idx[static_cast<size_t>(da)] += 1;
            idx[static_cast<size_t>(db)] += 1;
            Expvec mono(dim, 0);
            mono[static_cast<size_t>(x3)] = n - 4;
            mono[static_cast<size_t>(ca)] += 1;
            mono[static_cast<size_t>(cb)] += 1;
            op.add_term({idx}, monomial(X, mono, w * scale));
        };
        add(x5, x5, x2, x2, Rat(1));
        add(x4, x4, x1, x1, Rat(1));
        add(x4, x5, x1, x2, Rat(2));
        return op;
    };
    auto bound = [x3](const std::vector<RationalFunction>& args) {
        const RationalFunction& f = args.at(0);
        if (f.is_zero()) return -1;
        if (f.den().degree_in(x3) > 0)
            throw std::domain_error("series truncation needs a denominator free of x3");
        return f.num().degree_in(x3) + 2;
    };
    return OperatorSeries(X, 1, 4, std::move(gen), std::move(bound));
}

// The substitution x3 -> -x3 as a derivative series: term n is
// (-2 x3)^n / n! d3^n, killed beyond the input's x3-degree.
OperatorSeries make_sigma3_series(const VarSpacePtr& X) {
    const int x3 = need_var(X, "x3");
    const auto dim = static_cast<size_t>(X->dim());

    auto gen = [=](int n) {
        MultiDiffOperator op(X, 1);
        Rat c = Rat(BigInt(1) << n) / Rat(factorial(n));
        if (n % 2 == 1) c = -c;
        Expvec idx(dim, 0), mono(dim, 0);
        idx[static_cast<size_t>(x3)] = n;
        mono[static_cast<size_t>(x3)] = n;
        op.add_term({idx}, monomial(X, mono, c));
        return op;
    };
    auto bound = [x3](const std::vector<RationalFunction>& args) {
        const RationalFunction& f = args.at(0);
        if (f.is_zero()) return -1;
        if (f.den().degree_in(x3) > 0)
            throw std::domain_error("series truncation needs a denominator free of x3");
        return f.num().degree_in(x3);
    };
    return OperatorSeries(X, 1, 0, std::move(gen), std::move(bound));
}

// Chart-space form of the correction series: term n is
//
//   weight(n) q^(n-4) (q lambda1^2 d_lambda3 + d_q)^(n-2) d_pp,
//
// the noncommuting power expanded by left-to-right composition. Each factor
// lowers q-degree + 2*lambda3-degree by one, so term n dies on inputs with
// q-degree + 2*lambda3-degree < n - 2.
OperatorSeries make_t_tilde_series(const VarSpacePtr& C, const Rat& kappa) {
    const int p = need_var(C, "p1"), q = need_var(C, "q1"), l1 = need_var(C, "lambda1"),
              l3 = need_var(C, "lambda3");
    const auto dim = static_cast<size_t>(C->dim());

    auto gen = [=](int n) {
        MultiDiffOperator acc(C, 1);
        {
            Expvec idx(dim, 0);
            idx[static_cast<size_t>(p)] = 2;
            acc.add_term({idx}, Polynomial(C, Rat(1)));
        }
        Expvec qm(dim, 0);
        qm[static_cast<size_t>(q)] = 1;
        qm[static_cast<size_t>(l1)] = 2;
        const RationalFunction q_lambda1_sq(monomial(C, qm, Rat(1)));

        for (int k = 0; k < n - 2; ++k) {
            MultiDiffOperator next(C, 1);
            for (const auto& [idx, coef] : acc.terms()) {
                // q lambda1^2 d_lambda3: Leibniz over coefficient and slot
                next.add_term(idx, q_lambda1_sq * coef.derivative(l3));
                Expvec up_l3 = idx.at(0);
                up_l3[static_cast<size_t>(l3)] += 1;
                next.add_term({up_l3}, q_lambda1_sq * coef);
                // d_q likewise
                next.add_term(idx, coef.derivative(q));
                Expvec up_q = idx.at(0);
                up_q[static_cast<size_t>(q)] += 1;
                next.add_term({up_q}, coef);
            }
            acc = std::move(next);
        }

        Expvec qpow(dim, 0);
        qpow[static_cast<size_t>(q)] = n - 4;
        const RationalFunction scale(monomial(C, qpow, series_weight(n) * kappa));
        MultiDiffOperator op(C, 1);
        for (const auto& [idx, coef] : acc.terms()) op.add_term(idx, scale * coef);
        return op;
    };
    auto bound = [q, l3](const std::vector<RationalFunction>& args) {
        const RationalFunction& f = args.at(0);
        if (f.is_zero()) return -1;
        if (f.den().degree_in(q) > 0 || f.den().degree_in(l3) > 0)
            throw std::domain_error("series truncation needs a denominator free of q1 and lambda3");
        return f.num().degree_in(q) + 2 * f.num().degree_in(l3) + 2;
    };
    return OperatorSeries(C, 1, 4, std::move(gen), std::move(bound));
}

// The constant kappa with computed == kappa * reference, or throw.
Rat proportionality(const MultiDiffOperator& computed, const MultiDiffOperator& reference) {
    if (computed.is_zero() || reference.is_zero())
        throw std::runtime_error("normalization quotient needs two nonzero operators");
    const auto& [idx, ref_coef] = *reference.terms().begin();
    const auto it = computed.terms().find(idx);
    if (it == computed.terms().end())
        throw std::runtime_error("computed cochain misses a term of the stored reference form");
    const RationalFunction quot = it->second / ref_coef;
    if (!quot.is_polynomial() || !quot.as_polynomial().is_constant())
        throw std::runtime_error("computed cochain is not a constant multiple of the reference form");
    const Rat kappa = quot.as_polynomial().constant_value();
    if (computed != reference * kappa)
        throw std::runtime_error("computed cochain is not proportional to the reference form");
    return kappa;
}

[[noreturn]] void missing(const std::string& fixture, const std::string& what) {
    throw std::domain_error("fixture " + fixture + " carries brackets and invariants only; no " +
                            what);
}

} // namespace

const Chart& FixtureBundle::chart() const {
    if (!m_chart) missing(m_name, "chart");
    return *m_chart;
}

const Rat& FixtureBundle::kappa() const {
    if (!m_kappa) missing(m_name, "normalization scalar");
    return *m_kappa;
}

const Polynomial& FixtureBundle::quadratic_invariant() const {
    if (!m_quadratic_invariant) missing(m_name, "quadratic invariant");
    return *m_quadratic_invariant;
}

const RegionDescriptor& FixtureBundle::region() const {
    if (!m_region) missing(m_name, "region descriptor");
    return *m_region;
}

const OperatorSeries& FixtureBundle::t_series() const {
    if (!m_t) missing(m_name, "correction series");
    return *m_t;
}

const OperatorSeries& FixtureBundle::sigma3_series() const {
    if (!m_sigma3) missing(m_name, "x3 parity series");
    return *m_sigma3;
}

const OperatorSeries& FixtureBundle::t_tilde_series() const {
    if (!m_t_tilde) missing(m_name, "chart-space correction series");
    return *m_t_tilde;
}

const MultiDiffOperator& FixtureBundle::c2g_operator() const {
    if (!m_c2g) missing(m_name, "extracted order-2 cochain");
    return *m_c2g;
}

const MultiDiffOperator& FixtureBundle::c2g_delta_display() const {
    if (!m_c2g_delta_display) missing(m_name, "stored order-2 reference form");
    return *m_c2g_delta_display;
}

const MultiDiffOperator& FixtureBundle::c2g_chart_operator() const {
    if (!m_c2g_chart) missing(m_name, "chart-space order-2 form");
    return *m_c2g_chart;
}

const MultiDiffOperator& FixtureBundle::t_prime_operator() const {
    if (!m_t_prime) missing(m_name, "third-order correction");
    return *m_t_prime;
}

const MultiDiffOperator& FixtureBundle::c2_kappa_operator() const {
    if (!m_c2_kappa) missing(m_name, "corrected rational cochain");
    return *m_c2_kappa;
}

RationalFunction FixtureBundle::t_closed_form(const Polynomial& u) const {
    if (!m_sigma3 || !m_kappa) missing(m_name, "correction series");
    const VarSpacePtr& X = space();
    require_same_space(*X, *u.space(), "t_closed_form");
    const int x1 = need_var(X, "x1"), x2 = need_var(X, "x2"), x3 = need_var(X, "x3"),
              x4 = need_var(X, "x4"), x5 = need_var(X, "x5");
    const auto dim = static_cast<size_t>(X->dim());

    auto deriv = [&](std::initializer_list<int> vars) {
        Expvec e(dim, 0);
        for (int v : vars) e[static_cast<size_t>(v)] += 1;
        return u.derivative(e);
    };
    auto prod = [&](int a, int b) {
        Expvec e(dim, 0);
        e[static_cast<size_t>(a)] += 1;
        e[static_cast<size_t>(b)] += 1;
        return monomial(X, e, Rat(1));
    };
    auto x3_power = [&](int k, const Rat& c) {
        Expvec e(dim, 0);
        e[static_cast<size_t>(x3)] = k;
        return monomial(X, e, c);
    };
    auto flip_minus_id = [&](const Polynomial& w) {
        return m_sigma3->apply(std::vector<Polynomial>{w}) - w;
    };

    RationalFunction out = RationalFunction::zero(X);
    out += RationalFunction(prod(x2, x2) * flip_minus_id(deriv({x5, x5})), x3_power(2, Rat(12)));
    out += RationalFunction(prod(x1, x2) * flip_minus_id(deriv({x4, x5})), x3_power(2, Rat(6)));
    out += RationalFunction(prod(x1, x1) * flip_minus_id(deriv({x4, x4})), x3_power(2, Rat(12)));
    out += RationalFunction(prod(x2, x2) * deriv({x3, x5, x5}), x3_power(1, Rat(6)));
    out += RationalFunction(prod(x1, x2) * deriv({x3, x4, x5}), x3_power(1, Rat(3)));
    out += RationalFunction(prod(x1, x1) * deriv({x3, x4, x4}), x3_power(1, Rat(6)));
    return out * *m_kappa;
}

FixtureBundle load_fixture(const std::string& name) { return load_fixture(name, STARPROD_DATA_DIR); }

FixtureBundle load_fixture(const std::string& name, const std::string& data_dir) {
    if (name != "g54" && name != "g612" && name != "g614")
        throw std::invalid_argument("unknown fixture '" + name +
                                    "' (available: g54, g612, g614)");

    AlgebraSpec spec = load_algebra_spec(data_dir + "/" + name + ".lie");

    FixtureBundle b;
    b.m_name = name;
    b.m_algebra = spec.algebra;

    const ValidationReport report = b.m_algebra->validate();
    if (!report.ok)
        throw std::runtime_error("fixture " + name + " failed validation:\n" + report.str());
    for (const auto& inv : b.m_algebra->invariants())
        if (poisson_noncentral_witness(*b.m_algebra, RationalFunction(inv)))
            throw std::runtime_error("fixture " + name + ": declared invariant " + inv.str() +
                                     " is not Poisson-central");
    if (spec.chart) {
        const ValidationReport chart_report = validate_chart(*b.m_algebra, *spec.chart);
        if (!chart_report.ok)
            throw std::runtime_error("fixture " + name + " chart failed validation:\n" +
                                     chart_report.str());
        b.m_chart = std::move(spec.chart);
    }
    b.m_workspace = std::make_shared<GuttWorkspace>(*b.m_algebra);

    const std::string delta_path = data_dir + "/" + name + "_c2g_delta.op";
    if (!std::filesystem::exists(delta_path)) return b; // brackets and invariants only

    const VarSpacePtr& X = b.m_algebra->space();

    const Polynomial* quad = nullptr;
    for (const auto& inv : b.m_algebra->invariants()) {
        if (inv.degree() != 2) continue;
        if (quad)
            throw std::runtime_error("fixture " + name +
                                     ": more than one degree-2 invariant, corrections ambiguous");
        quad = &inv;
    }
    if (!quad)
        throw std::runtime_error("fixture " + name + ": corrections need a degree-2 invariant");
    b.m_quadratic_invariant = *quad;

    if (!b.m_chart) throw std::runtime_error("fixture " + name + ": corrections need a chart");
    if (!spec.region)
        throw std::runtime_error("fixture " + name + ": corrections need a region directive");
    b.m_region = RegionDescriptor{spec.region->str() + " != 0", *spec.region};

    MultiDiffOperator display = parse_operator_text(read_text_file(delta_path), X);
    if (display.arity() != 1)
        throw std::runtime_error("fixture " + name + ": reference form must be unary");
    b.m_c2g_delta_display = std::move(display);

    // Normalization: extract the order-2 cochain with the quadratic invariant
    // frozen in slot 1 and divide by the stored reference form. The extraction
    // sweep compares candidate and black box on monomials in all variables, so
    // the derivative-variable restriction cannot silently drop terms.
    const auto ws = b.m_workspace;
    const Polynomial delta = *b.m_quadratic_invariant;
    const std::vector<int> noncentral{need_var(X, "x3"), need_var(X, "x4"), need_var(X, "x5")};

    ExtractOptions unary_opt;
    unary_opt.order_bound = 2;
    unary_opt.slot_order_bounds = std::vector<int>{2};
    unary_opt.derivative_vars = noncentral;
    const MultiDiffOperator frozen = extract_operator(
        [&ws, &delta](const std::vector<Polynomial>& args) {
            return ws->gutt_cochain(2, delta, args.at(0));
        },
        X, 1, unary_opt);
    b.m_kappa = proportionality(frozen, *b.m_c2g_delta_display);
    const Rat kappa = *b.m_kappa;

    ExtractOptions binary_opt;
    binary_opt.order_bound = 4;
    binary_opt.slot_order_bounds = std::vector<int>{2, 2};
    binary_opt.derivative_vars = noncentral;
    b.m_c2g = extract_operator(
        [&ws](const std::vector<Polynomial>& args) {
            return ws->gutt_cochain(2, args.at(0), args.at(1));
        },
        X, 2, binary_opt);

    b.m_sigma3 = make_sigma3_series(X);
    b.m_t = make_t_series(X, kappa);

    MultiDiffOperator t_prime =
        parse_operator_text(read_text_file(data_dir + "/" + name + "_t_prime.op"), X);
    if (t_prime.arity() != 1)
        throw std::runtime_error("fixture " + name + ": third-order correction must be unary");
    b.m_t_prime = t_prime * kappa;
    b.m_c2_kappa = *b.m_c2g + hochschild_delta(*b.m_t_prime);

    const VarSpacePtr& C = b.m_chart->cspace;
    MultiDiffOperator chart_form =
        parse_operator_text(read_text_file(data_dir + "/" + name + "_c2g_chart.op"), C);
    if (chart_form.arity() != 2)
        throw std::runtime_error("fixture " + name + ": chart-space form must be bilinear");
    b.m_c2g_chart = chart_form * kappa;
    b.m_t_tilde = make_t_tilde_series(C, kappa);

    return b;
}

const OperatorSeries& t_correction(const FixtureBundle& bundle) { return bundle.t_series(); }

BilinearCochain corrected_c2(const FixtureBundle& bundle) {
    auto ws = bundle.workspace();
    // Own copy: the evaluator keeps its own memo cache and outlives the bundle.
    OperatorSeries T = bundle.t_series();
    return BilinearCochain([ws, T](const Polynomial& u, const Polynomial& v) {
        Polynomial out = ws->gutt_cochain(2, u, v);
        out += u * T.apply(std::vector<Polynomial>{v});
        out -= T.apply(std::vector<Polynomial>{u * v});
        out += T.apply(std::vector<Polynomial>{u}) * v;
        return out;
    });
}

const MultiDiffOperator& c2_kappa(const FixtureBundle& bundle) {
    return bundle.c2_kappa_operator();
}

ChartForms chart_form_operators(const FixtureBundle& bundle) {
    return ChartForms{bundle.c2g_chart_operator(), bundle.t_tilde_series()};
}

} // namespace starprod
