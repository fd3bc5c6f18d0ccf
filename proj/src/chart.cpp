#include "starprod/chart.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace starprod {

namespace {

enum class Role { P, Q, Lambda };

std::optional<std::pair<Role, int>> parse_role(const std::string& name) {
    auto suffix_number = [](const std::string& s, size_t from) -> std::optional<int> {
        if (from >= s.size()) return std::nullopt;
        for (size_t i = from; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        return std::stoi(s.substr(from));
    };
    if (name.rfind("lambda", 0) == 0) {
        if (auto n = suffix_number(name, 6)) return std::make_pair(Role::Lambda, *n);
        return std::nullopt;
    }
    if (name.size() >= 2 && (name[0] == 'p' || name[0] == 'q')) {
        if (auto n = suffix_number(name, 1))
            return std::make_pair(name[0] == 'p' ? Role::P : Role::Q, *n);
    }
    return std::nullopt;
}

} // namespace

bool Chart::is_p(int cvar) const {
    return std::find(p_vars.begin(), p_vars.end(), cvar) != p_vars.end();
}

Chart make_chart(VarSpacePtr xspace, VarSpacePtr cspace,
                 std::vector<RationalFunction> forward,
                 std::vector<RationalFunction> inverse) {
    Chart chart;
    chart.xspace = std::move(xspace);
    chart.cspace = std::move(cspace);
    chart.forward = std::move(forward);
    chart.inverse = std::move(inverse);

    if (static_cast<int>(chart.forward.size()) != chart.cspace->dim())
        throw std::invalid_argument("chart needs one forward expression per chart variable");
    if (static_cast<int>(chart.inverse.size()) != chart.xspace->dim())
        throw std::invalid_argument("chart needs one inverse expression per x variable");

    std::vector<int> p_suffix, q_suffix;
    for (int i = 0; i < chart.cspace->dim(); ++i) {
        const auto role = parse_role(chart.cspace->name(i));
        if (!role)
            throw std::invalid_argument("chart variable '" + chart.cspace->name(i) +
                                        "' matches none of p<n>, q<n>, lambda<n>");
        switch (role->first) {
            case Role::P: chart.p_vars.push_back(i); p_suffix.push_back(role->second); break;
            case Role::Q: chart.q_vars.push_back(i); q_suffix.push_back(role->second); break;
            case Role::Lambda: chart.lambda_vars.push_back(i); break;
        }
    }
    if (p_suffix != q_suffix)
        throw std::invalid_argument("chart p/q variables are not matched pairs");
    return chart;
}

RationalFunction chart_push(const Chart& chart, const RationalFunction& u) {
    require_same_space(*chart.xspace, *u.space(), "chart push");
    return substitute(u, chart.inverse);
}

RationalFunction chart_pull(const Chart& chart, const RationalFunction& g) {
    require_same_space(*chart.cspace, *g.space(), "chart pull");
    return substitute(g, chart.forward);
}

namespace {

int p_degree_poly(const Chart& chart, const Polynomial& poly) {
    if (poly.is_zero()) return kNegInfDeg;
    int best = 0;
    for (const auto& [e, c] : poly.terms()) {
        int d = 0;
        for (int pv : chart.p_vars) d += e[static_cast<size_t>(pv)];
        best = std::max(best, d);
    }
    return best;
}

} // namespace

int p_degree(const Chart& chart, const RationalFunction& f) {
    require_same_space(*chart.cspace, *f.space(), "p-degree");
    if (f.is_zero()) return kNegInfDeg;
    return p_degree_poly(chart, f.num()) - p_degree_poly(chart, f.den());
}

ValidationReport validate_chart(const LieAlgebra& L, const Chart& chart) {
    ValidationReport report;
    auto fail = [&](const std::string& check, const std::string& detail) {
        report.ok = false;
        report.issues.push_back({check, detail});
    };

    for (int i = 0; i < chart.cspace->dim(); ++i) {
        RationalFunction back = chart_push(chart, chart.forward[static_cast<size_t>(i)]);
        RationalFunction self(Polynomial::variable(chart.cspace, i));
        if (back != self)
            fail("round-trip", "chart variable " + chart.cspace->name(i) +
                                   " does not survive pull then push: got " + back.str());
    }
    for (int i = 0; i < chart.xspace->dim(); ++i) {
        RationalFunction back = chart_pull(chart, chart.inverse[static_cast<size_t>(i)]);
        RationalFunction self(Polynomial::variable(chart.xspace, i));
        if (back != self)
            fail("round-trip", "coordinate " + chart.xspace->name(i) +
                                   " does not survive push then pull: got " + back.str());
    }

    for (int lv : chart.lambda_vars) {
        const auto bad = poisson_noncentral_witness(L, chart.forward[static_cast<size_t>(lv)]);
        if (bad)
            fail("central", "chart variable " + chart.cspace->name(lv) + " is not Poisson-central: {" +
                                chart.cspace->name(lv) + ", " + L.space()->name(*bad) + "} != 0");
    }

    const size_t npairs = chart.p_vars.size();
    for (size_t a = 0; a < npairs; ++a) {
        for (size_t b = 0; b < npairs; ++b) {
            const auto& pa = chart.forward[static_cast<size_t>(chart.p_vars[a])];
            const auto& qb = chart.forward[static_cast<size_t>(chart.q_vars[b])];
            RationalFunction pq = poisson(L, pa, qb);
            RationalFunction want = RationalFunction::constant(L.space(), a == b ? Rat(1) : Rat(0));
            if (pq != want)
                fail("canonical", "{" + chart.cspace->name(chart.p_vars[a]) + ", " +
                                      chart.cspace->name(chart.q_vars[b]) + "} = " + pq.str());
            const auto& pb = chart.forward[static_cast<size_t>(chart.p_vars[b])];
            const auto& qa = chart.forward[static_cast<size_t>(chart.q_vars[a])];
            if (!poisson(L, pa, pb).is_zero())
                fail("canonical", "{" + chart.cspace->name(chart.p_vars[a]) + ", " +
                                      chart.cspace->name(chart.p_vars[b]) + "} != 0");
            if (!poisson(L, qa, qb).is_zero())
                fail("canonical", "{" + chart.cspace->name(chart.q_vars[a]) + ", " +
                                      chart.cspace->name(chart.q_vars[b]) + "} != 0");
        }
    }
    return report;
}

} // namespace starprod
