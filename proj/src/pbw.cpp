#include "starprod/pbw.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace starprod {

PBWElement::PBWElement(VarSpacePtr space) : m_space(std::move(space)) {
    if (!m_space) throw std::invalid_argument("enveloping-algebra element needs a variable space");
}

PBWElement PBWElement::one(VarSpacePtr space) {
    PBWElement out(std::move(space));
    out.m_terms.emplace(Word{}, Rat(1));
    return out;
}

int PBWElement::top_length() const {
    if (m_terms.empty()) return kNegInfDeg;
    return static_cast<int>(m_terms.rbegin()->first.size());
}

PBWElement& PBWElement::add_term(const Word& w, const Rat& coef) {
    if (coef == 0) return *this;
    if (!std::is_sorted(w.begin(), w.end()))
        throw std::logic_error("word added to a normal-form element is not sorted");
    auto [it, inserted] = m_terms.try_emplace(w, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) m_terms.erase(it);
    }
    return *this;
}

PBWElement& PBWElement::operator+=(const PBWElement& rhs) {
    require_same_space(*m_space, *rhs.m_space, "enveloping-algebra addition");
    for (const auto& [w, c] : rhs.m_terms) add_term(w, c);
    return *this;
}

PBWElement& PBWElement::operator-=(const PBWElement& rhs) {
    require_same_space(*m_space, *rhs.m_space, "enveloping-algebra subtraction");
    for (const auto& [w, c] : rhs.m_terms) add_term(w, -c);
    return *this;
}

PBWElement& PBWElement::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        m_terms.clear();
        return *this;
    }
    for (auto& [w, c] : m_terms) c *= scalar;
    return *this;
}

bool PBWElement::operator==(const PBWElement& rhs) const {
    require_same_space(*m_space, *rhs.m_space, "enveloping-algebra comparison");
    return m_terms == rhs.m_terms;
}

std::string PBWElement::str() const {
    if (m_terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
        const auto& [w, c] = *it;
        const bool negative = c < 0;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const Rat mag = negative ? Rat(-c) : c;
        if (w.empty()) {
            out << rat_str(mag);
        } else {
            if (mag != 1) out << rat_str(mag) << '*';
            for (size_t i = 0; i < w.size(); ++i) {
                if (i) out << '*';
                out << m_space->name(w[i]);
            }
        }
    }
    return out.str();
}

GuttWorkspace::GuttWorkspace(const LieAlgebra& L) : m_L(&L) {}

const PBWElement& GuttWorkspace::reduce_word(const Word& w) {
    if (auto it = m_reduce.find(w); it != m_reduce.end()) return it->second;

    PBWElement out(space());
    size_t descent = w.size();
    for (size_t t = 0; t + 1 < w.size(); ++t) {
        if (w[t] > w[t + 1]) {
            descent = t;
            break;
        }
    }
    if (descent == w.size()) {
        out.add_term(w, Rat(1));
    } else {
        Word swapped = w;
        std::swap(swapped[descent], swapped[descent + 1]);
        out += reduce_word(swapped);
        // Bracket term: replace the descending pair by [X_i, X_j].
        const int i = w[descent], j = w[descent + 1];
        Word contracted;
        contracted.reserve(w.size() - 1);
        contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(descent));
        contracted.push_back(0); // placeholder
        contracted.insert(contracted.end(), w.begin() + static_cast<long>(descent) + 2, w.end());
        for (int k = 0; k < m_L->dim(); ++k) {
            const Rat& coef = m_L->c(i, j, k);
            if (coef == 0) continue;
            contracted[descent] = k;
            PBWElement part = reduce_word(contracted);
            part *= coef;
            out += part;
        }
    }
    return m_reduce.emplace(w, std::move(out)).first->second;
}

PBWElement GuttWorkspace::uea_mul(const PBWElement& u, const PBWElement& v) {
    PBWElement out(space());
    for (const auto& [wu, cu] : u.terms()) {
        for (const auto& [wv, cv] : v.terms()) {
            Word concat = wu;
            concat.insert(concat.end(), wv.begin(), wv.end());
            PBWElement part = reduce_word(concat);
            part *= cu * cv;
            out += part;
        }
    }
    return out;
}

const PBWElement& GuttWorkspace::symmetrize_monomial(const Expvec& e) {
    if (auto it = m_sym.find(e); it != m_sym.end()) return it->second;

    Word sorted;
    for (int v = 0; v < static_cast<int>(e.size()); ++v)
        for (int k = 0; k < e[static_cast<size_t>(v)]; ++k) sorted.push_back(v);

    // Average over all distinct letter orders. With repeats the number of
    // distinct orders is n!/prod(e_i!), so weighting each by prod(e_i!)/n!
    // averages correctly.
    Rat weight(factorial(expvec_total(e)), 1);
    for (int v = 0; v < static_cast<int>(e.size()); ++v) weight /= Rat(factorial(e[static_cast<size_t>(v)]), 1);
    weight = Rat(1) / weight;

    PBWElement out(space());
    Word perm = sorted;
    do {
        PBWElement part = reduce_word(perm);
        part *= weight;
        out += part;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return m_sym.emplace(e, std::move(out)).first->second;
}

PBWElement GuttWorkspace::symmetrize(const Polynomial& p) {
    require_same_space(*space(), *p.space(), "symmetrize");
    PBWElement out(space());
    for (const auto& [e, c] : p.terms()) {
        PBWElement part = symmetrize_monomial(e);
        part *= c;
        out += part;
    }
    return out;
}

std::map<int, Polynomial> GuttWorkspace::graded_decompose(const PBWElement& u) {
    std::map<int, Polynomial> out;
    PBWElement work = u;
    while (!work.is_zero()) {
        const int k = work.top_length();
        // Top-length words of a symmetrized image agree with the plain
        // letter-count monomials, so the degree-k layer reads off directly.
        Polynomial layer(space());
        for (const auto& [w, c] : work.terms()) {
            if (static_cast<int>(w.size()) != k) continue;
            Expvec e(static_cast<size_t>(space()->dim()), 0);
            for (int letter : w) e[static_cast<size_t>(letter)] += 1;
            layer.add_term(e, c);
        }
        work -= symmetrize(layer);
        out.emplace(k, std::move(layer));
    }
    return out;
}

Polynomial GuttWorkspace::sigma_inverse(const PBWElement& u) {
    Polynomial out(space());
    for (auto& [k, layer] : graded_decompose(u)) out += layer;
    return out;
}

const std::map<int, Polynomial>& GuttWorkspace::gutt_components(const Expvec& eu, const Expvec& ev) {
    const auto key = std::make_pair(eu, ev);
    if (auto it = m_pair.find(key); it != m_pair.end()) return it->second;
    PBWElement prod = uea_mul(symmetrize_monomial(eu), symmetrize_monomial(ev));
    return m_pair.emplace(key, graded_decompose(prod)).first->second;
}

Polynomial GuttWorkspace::gutt_cochain(int n, const Polynomial& u, const Polynomial& v) {
    require_same_space(*space(), *u.space(), "ladder cochain");
    require_same_space(*space(), *v.space(), "ladder cochain");
    if (n < 0) throw std::invalid_argument("ladder cochain index must be nonnegative");
    Polynomial out(space());
    const Rat scale(BigInt(1) << n, 1);
    for (const auto& [eu, cu] : u.terms()) {
        for (const auto& [ev, cv] : v.terms()) {
            const int k = expvec_total(eu) + expvec_total(ev) - n;
            if (k < 0) continue;
            const auto& comps = gutt_components(eu, ev);
            auto it = comps.find(k);
            if (it == comps.end()) continue;
            out += it->second * (scale * cu * cv);
        }
    }
    return out;
}

} // namespace starprod
