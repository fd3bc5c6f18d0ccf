#include "starprod/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace starprod {

int expvec_total(const Expvec& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

bool GrlexLess::operator()(const Expvec& a, const Expvec& b) const {
    const int da = expvec_total(a);
    const int db = expvec_total(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(VarSpacePtr space) : m_space(std::move(space)) {
    if (!m_space) throw std::invalid_argument("polynomial needs a variable space");
}

Polynomial::Polynomial(VarSpacePtr space, const Rat& constant) : Polynomial(std::move(space)) {
    if (constant != 0) m_terms.emplace(Expvec(static_cast<size_t>(m_space->dim()), 0), constant);
}

Polynomial Polynomial::monomial(VarSpacePtr space, Expvec exponents, Rat coef) {
    Polynomial p(std::move(space));
    if (static_cast<int>(exponents.size()) != p.m_space->dim())
        throw std::invalid_argument("monomial exponent vector has wrong length");
    for (int e : exponents)
        if (e < 0) throw std::invalid_argument("monomial exponent must be nonnegative");
    if (coef != 0) p.m_terms.emplace(std::move(exponents), std::move(coef));
    return p;
}

Polynomial Polynomial::variable(VarSpacePtr space, int var_index, Rat coef) {
    Expvec e(static_cast<size_t>(space->dim()), 0);
    if (var_index < 0 || var_index >= space->dim())
        throw std::invalid_argument("variable index out of range");
    e[static_cast<size_t>(var_index)] = 1;
    return monomial(std::move(space), std::move(e), std::move(coef));
}

bool Polynomial::is_constant() const {
    if (m_terms.empty()) return true;
    return m_terms.size() == 1 && expvec_total(m_terms.begin()->first) == 0;
}

Rat Polynomial::constant_value() const {
    Expvec zero(static_cast<size_t>(m_space->dim()), 0);
    return coefficient(zero);
}

Rat Polynomial::coefficient(const Expvec& exponents) const {
    auto it = m_terms.find(exponents);
    return it == m_terms.end() ? Rat(0) : it->second;
}

int Polynomial::degree() const {
    if (m_terms.empty()) return kNegInfDeg;
    return expvec_total(m_terms.rbegin()->first);
}

int Polynomial::degree_in(int var) const {
    if (m_terms.empty()) return kNegInfDeg;
    int d = 0;
    for (const auto& [e, c] : m_terms) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (m_terms.empty()) return true;
    const int d = expvec_total(m_terms.begin()->first);
    for (const auto& [e, c] : m_terms)
        if (expvec_total(e) != d) return false;
    return true;
}

Polynomial Polynomial::homogeneous_component(int d) const {
    Polynomial out(m_space);
    for (const auto& [e, c] : m_terms)
        if (expvec_total(e) == d) out.m_terms.emplace(e, c);
    return out;
}

std::map<int, Polynomial> Polynomial::homogeneous_components() const {
    std::map<int, Polynomial> out;
    for (const auto& [e, c] : m_terms) {
        auto [it, fresh] = out.try_emplace(expvec_total(e), m_space);
        it->second.m_terms.emplace(e, c);
    }
    return out;
}

Polynomial& Polynomial::add_term(const Expvec& exponents, const Rat& coef) {
    if (coef == 0) return *this;
    auto [it, inserted] = m_terms.try_emplace(exponents, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) m_terms.erase(it);
    }
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(m_space);
    for (const auto& [e, c] : m_terms) out.m_terms.emplace(e, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    check_space(rhs, "polynomial addition");
    for (const auto& [e, c] : rhs.m_terms) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    check_space(rhs, "polynomial subtraction");
    for (const auto& [e, c] : rhs.m_terms) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        m_terms.clear();
        return *this;
    }
    for (auto& [e, c] : m_terms) c *= scalar;
    return *this;
}

Polynomial& Polynomial::operator/=(const Rat& scalar) {
    if (scalar == 0) throw std::domain_error("division of polynomial by zero scalar");
    return *this *= Rat(rat_den(scalar), rat_num(scalar));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    check_space(rhs, "polynomial multiplication");
    Polynomial out(m_space);
    const size_t n = static_cast<size_t>(m_space->dim());
    Expvec sum(n, 0);
    for (const auto& [ea, ca] : m_terms) {
        for (const auto& [eb, cb] : rhs.m_terms) {
            for (size_t i = 0; i < n; ++i) sum[i] = ea[i] + eb[i];
            out.add_term(sum, ca * cb);
        }
    }
    m_terms = std::move(out.m_terms);
    return *this;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    check_space(rhs, "polynomial comparison");
    return m_terms == rhs.m_terms;
}

Polynomial Polynomial::pow(int n) const {
    if (n < 0) throw std::invalid_argument("polynomial power must be nonnegative");
    Polynomial acc(m_space, Rat(1));
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1) acc *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return acc;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= m_space->dim()) throw std::invalid_argument("derivative index out of range");
    Polynomial out(m_space);
    for (const auto& [e, c] : m_terms) {
        const int k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        Expvec d = e;
        d[static_cast<size_t>(var)] = k - 1;
        out.add_term(d, c * k);
    }
    return out;
}

Polynomial Polynomial::derivative(const Expvec& multi) const {
    Polynomial out = *this;
    for (int v = 0; v < m_space->dim(); ++v)
        for (int k = 0; k < multi[static_cast<size_t>(v)]; ++k) out = out.derivative(v);
    return out;
}

const Expvec& Polynomial::leading_monomial() const {
    if (m_terms.empty()) throw std::logic_error("leading term of zero polynomial");
    return m_terms.rbegin()->first;
}

const Rat& Polynomial::leading_coefficient() const {
    if (m_terms.empty()) throw std::logic_error("leading term of zero polynomial");
    return m_terms.rbegin()->second;
}

Rat Polynomial::primitive_scale() const {
    if (m_terms.empty()) throw std::logic_error("primitive scale of zero polynomial");
    BigInt den_lcm = 1;
    for (const auto& [e, c] : m_terms) {
        const BigInt d = rat_den(c);
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
    }
    BigInt num_gcd = 0;
    for (const auto& [e, c] : m_terms)
        num_gcd = boost::multiprecision::gcd(num_gcd, BigInt(rat_num(c) * den_lcm / rat_den(c)));
    Rat s(den_lcm, num_gcd);
    if (leading_coefficient() < 0) s = -s;
    return s;
}

std::string Polynomial::str() const {
    if (m_terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const Rat mag = negative ? Rat(-c) : c;
        std::string vars;
        for (int v = 0; v < m_space->dim(); ++v) {
            const int k = e[static_cast<size_t>(v)];
            if (k == 0) continue;
            if (!vars.empty()) vars += '*';
            vars += m_space->name(v);
            if (k > 1) vars += '^' + std::to_string(k);
        }
        if (vars.empty()) {
            out << rat_str(mag);
        } else {
            if (mag != 1) out << rat_str(mag) << '*';
            out << vars;
        }
    }
    return out.str();
}

void Polynomial::check_space(const Polynomial& rhs, const char* where) const {
    require_same_space(*m_space, *rhs.m_space, where);
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
    if (static_cast<int>(images.size()) != p.space()->dim())
        throw std::invalid_argument("substitution needs one image per variable");
    const VarSpacePtr target = images.empty() ? p.space() : images.front().space();
    Polynomial out(target);
    for (const auto& [e, c] : p.terms()) {
        Polynomial term(target, c);
        for (int v = 0; v < p.space()->dim(); ++v) {
            const int k = e[static_cast<size_t>(v)];
            if (k > 0) term *= images[static_cast<size_t>(v)].pow(k);
        }
        out += term;
    }
    return out;
}

} // namespace starprod
