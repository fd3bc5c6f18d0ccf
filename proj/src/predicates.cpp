#include "starprod/predicates.hpp"

#include <sstream>

namespace starprod {

namespace {

std::string monomial_str(const VarSpacePtr& space, const Expvec& e) {
    return Polynomial::monomial(space, e).str();
}

std::vector<std::string> tuple_strs(const VarSpacePtr& space, const std::vector<Expvec>& tuple) {
    std::vector<std::string> out;
    out.reserve(tuple.size());
    for (const Expvec& e : tuple) out.push_back(monomial_str(space, e));
    return out;
}

std::vector<RationalFunction> tuple_args(const VarSpacePtr& space, const std::vector<Expvec>& tuple) {
    std::vector<RationalFunction> out;
    out.reserve(tuple.size());
    for (const Expvec& e : tuple) out.emplace_back(Polynomial::monomial(space, e));
    return out;
}

} // namespace

std::string CheckReport::str() const {
    std::ostringstream out;
    out << (pass ? "[PASS] " : "[FAIL] ") << name << " (" << grid << ", degree <= " << degree_bound
        << ")";
    if (witness) {
        out << "\n  witness: (";
        for (size_t i = 0; i < witness->inputs.size(); ++i) {
            if (i) out << ", ";
            out << witness->inputs[i];
        }
        out << ") -> " << witness->discrepancy;
    }
    return out.str();
}

Cochain cochain_from(const MultiDiffOperator& op) {
    return Cochain{op.arity(),
                   [op](const std::vector<RationalFunction>& args) { return op.apply(args); }};
}

Cochain cochain_from(int arity, PolyCochainFn fn) {
    return Cochain{arity, [fn = std::move(fn)](const std::vector<RationalFunction>& args) {
                       std::vector<Polynomial> polys;
                       polys.reserve(args.size());
                       for (const auto& a : args) polys.push_back(a.as_polynomial());
                       return RationalFunction(fn(polys));
                   }};
}

Cochain cochain_from(const BilinearCochain& c) {
    return Cochain{2, [c](const std::vector<RationalFunction>& args) {
                       return RationalFunction(c(args[0].as_polynomial(), args[1].as_polynomial()));
                   }};
}

void for_each_monomial_tuple(int dim, int arity, int bound,
                             const std::function<bool(const std::vector<Expvec>&)>& visit) {
    std::vector<Expvec> tuple(static_cast<size_t>(arity), Expvec(static_cast<size_t>(dim), 0));
    bool stop = false;
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (stop) return;
        if (pos == arity * dim) {
            if (!visit(tuple)) stop = true;
            return;
        }
        const size_t a = static_cast<size_t>(pos / dim);
        const size_t v = static_cast<size_t>(pos % dim);
        for (int e = 0; e <= remaining && !stop; ++e) {
            tuple[a][v] = e;
            rec(pos + 1, remaining - e);
        }
        tuple[a][v] = 0;
    };
    rec(0, bound);
}

CheckReport is_homogeneous(const Cochain& C, const VarSpacePtr& space, int n, int degree_bound,
                           const std::string& subject) {
    CheckReport report;
    report.name = subject + ": homogeneous of degree -" + std::to_string(n);
    report.grid = "all monomial tuples";
    report.degree_bound = degree_bound;

    for_each_monomial_tuple(space->dim(), C.arity, degree_bound, [&](const std::vector<Expvec>& t) {
        int total = 0;
        for (const Expvec& e : t) total += expvec_total(e);
        const RationalFunction value = C.fn(tuple_args(space, t));
        if (value.is_zero()) return true;
        if (value.is_homogeneous() && value.degree() == total - n) return true;
        report.pass = false;
        report.witness = CheckWitness{tuple_strs(space, t),
                                      value.str() + " is not homogeneous of degree " +
                                          std::to_string(total - n)};
        return false;
    });
    return report;
}

CheckReport is_tangential(const LieAlgebra& L, const Cochain& C, int degree_bound,
                          const std::string& subject) {
    if (L.invariants().empty())
        throw std::invalid_argument("tangentiality needs declared invariants on " + L.name());
    const VarSpacePtr& space = L.space();

    CheckReport report;
    report.name = subject + ": tangential";
    report.grid = "all monomial tuples; constants and invariant multiples per slot";
    report.degree_bound = degree_bound;

    for_each_monomial_tuple(space->dim(), C.arity, degree_bound, [&](const std::vector<Expvec>& t) {
        std::vector<RationalFunction> args = tuple_args(space, t);
        const RationalFunction value = C.fn(args);

        // Slots holding the constant monomial force the value to vanish; the
        // invariant clause below still runs on these tuples, since
        // C(Q*1, v) = Q*C(1, v) = 0 is where low-degree failures surface.
        bool has_constant_slot = false;
        for (const Expvec& e : t)
            if (expvec_total(e) == 0) has_constant_slot = true;
        if (has_constant_slot && !value.is_zero()) {
            report.pass = false;
            report.witness =
                CheckWitness{tuple_strs(space, t), "nonzero on a constant slot: " + value.str()};
            return false;
        }

        for (const Polynomial& Q : L.invariants()) {
            const RationalFunction scaled = RationalFunction(Q) * value;
            for (int l = 0; l < C.arity; ++l) {
                std::vector<RationalFunction> moved = args;
                moved[static_cast<size_t>(l)] =
                    RationalFunction(Q * args[static_cast<size_t>(l)].as_polynomial());
                const RationalFunction through = C.fn(moved);
                if (through != scaled) {
                    report.pass = false;
                    report.witness =
                        CheckWitness{tuple_strs(space, t),
                                     "invariant " + Q.str() + " in slot " + std::to_string(l + 1) +
                                         ": difference " + (through - scaled).str()};
                    return false;
                }
            }
        }
        return true;
    });
    return report;
}

ChartCochainFn chart_map_from_operator(const MultiDiffOperator& op) {
    return [op](const std::vector<RationalFunction>& args) { return op.apply(args); };
}

ChartCochainFn chart_map_via_pullback(const MultiDiffOperator& op, const Chart& chart) {
    return [op, chart](const std::vector<RationalFunction>& args) {
        std::vector<RationalFunction> xargs;
        xargs.reserve(args.size());
        for (const auto& f : args) xargs.push_back(chart_pull(chart, f));
        return chart_push(chart, op.apply(xargs));
    };
}

ChartCochainFn chart_map_localized(const LieAlgebra& L, const Chart& chart, int arity,
                                   PolyCochainFn fn) {
    require_same_space(*L.space(), *chart.xspace, "localized chart map");
    return [L, chart, arity, fn = std::move(fn)](const std::vector<RationalFunction>& args) {
        if (static_cast<int>(args.size()) != arity)
            throw std::invalid_argument("localized map applied to wrong number of arguments");
        std::vector<Polynomial> numerators;
        numerators.reserve(args.size());
        Polynomial denominator(chart.xspace, Rat(1));
        for (const auto& f : args) {
            const RationalFunction g = chart_pull(chart, f);
            if (poisson_noncentral_witness(L, RationalFunction(g.den())))
                throw std::domain_error(
                    "localized extension needs invariant denominators; offending denominator " +
                    g.den().str());
            numerators.push_back(g.num());
            denominator *= g.den();
        }
        const RationalFunction value(fn(numerators), denominator);
        return chart_push(chart, value);
    };
}

CheckReport is_correct(const Chart& chart, const ChartCochainFn& C, int arity, int n,
                       int degree_bound, const std::string& subject) {
    CheckReport report;
    report.name = subject + ": correct of degree -" + std::to_string(n);
    report.grid = "all chart-variable monomial tuples";
    report.degree_bound = degree_bound;

    // p-degree of a chart monomial: total exponent over the p variables.
    std::vector<int> p_index;
    for (int v = 0; v < chart.cspace->dim(); ++v)
        if (chart.is_p(v)) p_index.push_back(v);

    for_each_monomial_tuple(chart.cspace->dim(), arity, degree_bound,
                            [&](const std::vector<Expvec>& t) {
                                int allowance = -n;
                                for (const Expvec& e : t)
                                    for (int v : p_index) allowance += e[static_cast<size_t>(v)];
                                const RationalFunction value = C(tuple_args(chart.cspace, t));
                                if (value.is_zero()) return true;
                                const int got = p_degree(chart, value);
                                if (got <= allowance) return true;
                                report.pass = false;
                                report.witness = CheckWitness{
                                    tuple_strs(chart.cspace, t),
                                    value.str() + " has p-degree " + std::to_string(got) +
                                        ", allowed " + std::to_string(allowance)};
                                return false;
                            });
    return report;
}

} // namespace starprod
