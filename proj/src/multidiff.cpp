#include "starprod/multidiff.hpp"

#include "starprod/parse.hpp"

#include <sstream>
#include <stdexcept>

namespace starprod {

int idx_total_order(const IdxTuple& t) {
    int total = 0;
    for (const Expvec& a : t) total += expvec_total(a);
    return total;
}

bool IdxTupleLess::operator()(const IdxTuple& a, const IdxTuple& b) const {
    const int ta = idx_total_order(a);
    const int tb = idx_total_order(b);
    if (ta != tb) return ta < tb;
    return a < b; // lexicographic on the nested vectors
}

MultiDiffOperator::MultiDiffOperator(VarSpacePtr space, int arity)
    : m_space(std::move(space)), m_arity(arity) {
    if (!m_space) throw std::invalid_argument("operator needs a variable space");
    if (arity < 1) throw std::invalid_argument("operator arity must be at least 1");
}

int MultiDiffOperator::order() const {
    if (m_terms.empty()) return kNegInfDeg;
    return idx_total_order(m_terms.rbegin()->first);
}

MultiDiffOperator& MultiDiffOperator::add_term(const IdxTuple& idx, RationalFunction coef) {
    if (static_cast<int>(idx.size()) != m_arity)
        throw std::invalid_argument("term slot count does not match operator arity");
    for (const Expvec& a : idx)
        if (static_cast<int>(a.size()) != m_space->dim())
            throw std::invalid_argument("term multi-index has wrong dimension");
    if (coef.is_zero()) return *this;
    require_same_space(*m_space, *coef.space(), "operator term");
    auto [it, inserted] = m_terms.try_emplace(idx, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.is_zero()) m_terms.erase(it);
    }
    return *this;
}

MultiDiffOperator& MultiDiffOperator::add_term(const IdxTuple& idx, Polynomial coef) {
    return add_term(idx, RationalFunction(std::move(coef)));
}

MultiDiffOperator MultiDiffOperator::operator-() const {
    MultiDiffOperator out(m_space, m_arity);
    for (const auto& [idx, coef] : m_terms) out.m_terms.emplace(idx, -coef);
    return out;
}

MultiDiffOperator& MultiDiffOperator::operator+=(const MultiDiffOperator& rhs) {
    require_same_space(*m_space, *rhs.m_space, "operator addition");
    if (m_arity != rhs.m_arity) throw std::invalid_argument("operator arity mismatch");
    for (const auto& [idx, coef] : rhs.m_terms) add_term(idx, coef);
    return *this;
}

MultiDiffOperator& MultiDiffOperator::operator-=(const MultiDiffOperator& rhs) {
    require_same_space(*m_space, *rhs.m_space, "operator subtraction");
    if (m_arity != rhs.m_arity) throw std::invalid_argument("operator arity mismatch");
    for (const auto& [idx, coef] : rhs.m_terms) add_term(idx, -coef);
    return *this;
}

MultiDiffOperator& MultiDiffOperator::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        m_terms.clear();
        return *this;
    }
    for (auto& [idx, coef] : m_terms) coef *= scalar;
    return *this;
}

bool MultiDiffOperator::operator==(const MultiDiffOperator& rhs) const {
    require_same_space(*m_space, *rhs.m_space, "operator comparison");
    return m_arity == rhs.m_arity && m_terms == rhs.m_terms;
}

Polynomial MultiDiffOperator::apply(const std::vector<Polynomial>& args) const {
    if (static_cast<int>(args.size()) != m_arity)
        throw std::invalid_argument("operator applied to wrong number of arguments");
    for (const auto& a : args) require_same_space(*m_space, *a.space(), "operator application");

    // Memoize argument derivatives across terms.
    std::vector<std::map<Expvec, Polynomial, GrlexLess>> derivs(args.size());
    auto deriv = [&](size_t slot, const Expvec& a) -> const Polynomial& {
        auto [it, fresh] = derivs[slot].try_emplace(a);
        if (fresh) it->second = args[slot].derivative(a);
        return it->second;
    };

    Polynomial out(m_space);
    for (const auto& [idx, coef] : m_terms) {
        if (!coef.is_polynomial())
            throw std::logic_error("operator has rational coefficients; apply it to rational arguments");
        Polynomial term = coef.as_polynomial();
        for (size_t l = 0; l < idx.size() && !term.is_zero(); ++l) term *= deriv(l, idx[l]);
        out += term;
    }
    return out;
}

RationalFunction MultiDiffOperator::apply(const std::vector<RationalFunction>& args) const {
    if (static_cast<int>(args.size()) != m_arity)
        throw std::invalid_argument("operator applied to wrong number of arguments");
    for (const auto& a : args) require_same_space(*m_space, *a.space(), "operator application");

    // Derivatives are built up one variable at a time and memoized per slot,
    // so nested multi-indices share work.
    std::vector<std::map<Expvec, RationalFunction, GrlexLess>> derivs(args.size());
    std::function<const RationalFunction&(size_t, const Expvec&)> deriv =
        [&](size_t slot, const Expvec& a) -> const RationalFunction& {
        auto it = derivs[slot].find(a);
        if (it != derivs[slot].end()) return it->second;
        RationalFunction value;
        if (expvec_total(a) == 0) {
            value = args[slot];
        } else {
            Expvec prev = a;
            int var = 0;
            for (int v = 0; v < static_cast<int>(a.size()); ++v)
                if (a[static_cast<size_t>(v)] > 0) { var = v; break; }
            prev[static_cast<size_t>(var)] -= 1;
            value = deriv(slot, prev).derivative(var);
        }
        return derivs[slot].emplace(a, std::move(value)).first->second;
    };

    RationalFunction out = RationalFunction::zero(m_space);
    for (const auto& [idx, coef] : m_terms) {
        RationalFunction term = coef;
        for (size_t l = 0; l < idx.size() && !term.is_zero(); ++l) term *= deriv(l, idx[l]);
        out += term;
    }
    return out;
}

std::string MultiDiffOperator::str() const {
    return operator_text(*this);
}

OperatorSeries::OperatorSeries(VarSpacePtr space, int arity, int nmin, Generator gen, Bound bound)
    : m_space(std::move(space)), m_arity(arity), m_nmin(nmin), m_gen(std::move(gen)),
      m_bound(std::move(bound)) {
    if (!m_gen || !m_bound) throw std::invalid_argument("operator series needs generator and bound");
}

const MultiDiffOperator& OperatorSeries::term(int n) const {
    auto it = m_memo.find(n);
    if (it != m_memo.end()) return it->second;
    MultiDiffOperator t = m_gen(n);
    if (t.arity() != m_arity) throw std::logic_error("series generator produced wrong arity");
    return m_memo.emplace(n, std::move(t)).first->second;
}

Polynomial OperatorSeries::apply(const std::vector<Polynomial>& args) const {
    std::vector<RationalFunction> rf;
    rf.reserve(args.size());
    for (const auto& a : args) rf.emplace_back(a);
    const int top = m_bound(rf);
    Polynomial out(m_space);
    for (int n = m_nmin; n <= top; ++n) out += term(n).apply(args);
    return out;
}

RationalFunction OperatorSeries::apply(const std::vector<RationalFunction>& args) const {
    const int top = m_bound(args);
    RationalFunction out = RationalFunction::zero(m_space);
    for (int n = m_nmin; n <= top; ++n) out += term(n).apply(args);
    return out;
}

MultiDiffOperator parse_operator_text(const std::string& text, const VarSpacePtr& space) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int arity = -1;
    std::vector<std::pair<IdxTuple, RationalFunction>> terms;

    auto fail = [&](const std::string& msg) -> void {
        throw std::runtime_error("operator text line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r\n");
            if (a == std::string::npos) return std::string();
            size_t b = s.find_last_not_of(" \t\r\n");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;

        if (line.rfind("arity", 0) == 0) {
            if (arity > 0) fail("duplicate arity line");
            try {
                arity = std::stoi(strip(line.substr(5)));
            } catch (const std::exception&) {
                fail("arity needs an integer");
            }
            if (arity < 1) fail("arity must be positive");
            continue;
        }
        if (line.rfind("term", 0) != 0) fail("expected 'arity' or 'term', got '" + line + "'");
        if (arity < 1) fail("term before arity line");

        const std::string body = strip(line.substr(4));
        const size_t semi = body.find(';');
        if (semi == std::string::npos) fail("term needs '<coef> ; <slots>'");
        RationalFunction coef;
        try {
            coef = parse_expression(strip(body.substr(0, semi)), space);
        } catch (const ParseError& e) {
            fail(std::string("coefficient: ") + e.what());
        }

        IdxTuple idx;
        std::string slots = body.substr(semi + 1);
        std::istringstream ss(slots);
        std::string slot;
        while (std::getline(ss, slot, '|')) {
            slot = strip(slot);
            if (slot.size() < 2 || slot.front() != '[' || slot.back() != ']')
                fail("slot must look like [i,j,...], got '" + slot + "'");
            Expvec a(static_cast<size_t>(space->dim()), 0);
            std::string inner = slot.substr(1, slot.size() - 2);
            std::istringstream is(inner);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                tok = strip(tok);
                if (tok.empty()) continue;
                int v = 0;
                try {
                    v = std::stoi(tok);
                } catch (const std::exception&) {
                    fail("slot index '" + tok + "' is not an integer");
                }
                if (v < 1 || v > space->dim()) fail("slot index out of range: " + tok);
                a[static_cast<size_t>(v - 1)] += 1;
            }
            idx.push_back(std::move(a));
        }
        if (static_cast<int>(idx.size()) != arity)
            fail("term has " + std::to_string(idx.size()) + " slots, arity is " + std::to_string(arity));
        terms.emplace_back(std::move(idx), std::move(coef));
    }

    if (arity < 1) throw std::runtime_error("operator text: missing arity line");
    MultiDiffOperator out(space, arity);
    for (auto& [idx, coef] : terms) out.add_term(idx, std::move(coef));
    return out;
}

std::string operator_text(const MultiDiffOperator& op) {
    std::ostringstream out;
    out << "arity " << op.arity() << "\n";
    for (const auto& [idx, coef] : op.terms()) {
        out << "term " << coef.str() << " ; ";
        for (size_t l = 0; l < idx.size(); ++l) {
            if (l) out << " | ";
            out << '[';
            bool first = true;
            for (int v = 0; v < static_cast<int>(idx[l].size()); ++v) {
                for (int k = 0; k < idx[l][static_cast<size_t>(v)]; ++k) {
                    if (!first) out << ',';
                    out << (v + 1);
                    first = false;
                }
            }
            out << ']';
        }
        out << "\n";
    }
    return out.str();
}

} // namespace starprod
