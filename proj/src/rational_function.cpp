#include "starprod/rational_function.hpp"

#include <stdexcept>

namespace starprod {

namespace {

bool divides(const Expvec& a, const Expvec& b) { // a | b componentwise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// --- helpers viewing a polynomial as a univariate in variable v ---

int deg_in(const Polynomial& p, int v) {
    return p.is_zero() ? kNegInfDeg : p.degree_in(v);
}

// Coefficient of x_v^k, returned with the x_v exponent zeroed out.
Polynomial coeff_in(const Polynomial& p, int v, int k) {
    Polynomial out(p.space());
    for (const auto& [e, c] : p.terms()) {
        if (e[static_cast<size_t>(v)] != k) continue;
        Expvec reduced = e;
        reduced[static_cast<size_t>(v)] = 0;
        out.add_term(reduced, c);
    }
    return out;
}

Polynomial times_power(const Polynomial& p, int v, int k) {
    Polynomial out(p.space());
    for (const auto& [e, c] : p.terms()) {
        Expvec raised = e;
        raised[static_cast<size_t>(v)] += k;
        out.add_term(raised, c);
    }
    return out;
}

Polynomial primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * p.primitive_scale();
}

// x_v-content: gcd of the x_v-coefficients.
Polynomial content_in(const Polynomial& p, int v) {
    Polynomial acc(p.space());
    for (int k = 0; k <= p.degree_in(v); ++k) {
        const Polynomial c = coeff_in(p, v, k);
        if (c.is_zero()) continue;
        acc = poly_gcd(acc, c);
        if (acc.is_constant()) break;
    }
    return acc;
}

// Primitive part with respect to x_v, scalar-normalized.
Polynomial primitive_part_in(const Polynomial& p, int v) {
    if (p.is_zero()) return p;
    return primitive(exact_divide(p, content_in(p, v)));
}

// Pseudo-remainder of a by b in variable v (deg_v b >= 1, b nonzero).
Polynomial pseudo_rem(Polynomial r, const Polynomial& b, int v) {
    const int db = deg_in(b, v);
    const Polynomial lc = coeff_in(b, v, db);
    while (!r.is_zero() && deg_in(r, v) >= db) {
        const int dr = deg_in(r, v);
        const Polynomial t = coeff_in(r, v, dr);
        r = lc * r - times_power(t, v, dr - db) * b;
    }
    return r;
}

} // namespace

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
    require_same_space(*a.space(), *b.space(), "polynomial division");
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial q(a.space());
    Polynomial r = a;
    const Expvec& lead_b = b.leading_monomial();
    const Rat& lc_b = b.leading_coefficient();
    while (!r.is_zero()) {
        const Expvec& lead_r = r.leading_monomial();
        if (!divides(lead_b, lead_r)) return std::nullopt;
        Expvec e(lead_r.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = lead_r[i] - lead_b[i];
        const Rat c = r.leading_coefficient() / lc_b;
        q.add_term(e, c);
        r -= Polynomial::monomial(a.space(), e, c) * b;
    }
    return q;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::logic_error("exact_divide: divisor does not divide dividend");
    return *q;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    require_same_space(*a.space(), *b.space(), "polynomial gcd");
    if (a.is_zero()) return primitive(b);
    if (b.is_zero()) return primitive(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(a.space(), Rat(1));

    // Main variable: the last one occurring in either operand.
    int v = -1;
    for (int i = a.space()->dim() - 1; i >= 0; --i) {
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            v = i;
            break;
        }
    }

    const Polynomial ca = content_in(a, v);
    const Polynomial cb = content_in(b, v);
    const Polynomial c = poly_gcd(ca, cb);
    Polynomial pa = exact_divide(a, ca);
    Polynomial pb = exact_divide(b, cb);
    if (deg_in(pa, v) < deg_in(pb, v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        Polynomial r = pseudo_rem(pa, pb, v);
        pa = std::move(pb);
        pb = primitive_part_in(r, v);
    }
    return primitive(c * primitive(pa));
}

RationalFunction::RationalFunction(Polynomial num)
    : m_num(std::move(num)), m_den(m_num.space(), Rat(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : m_num(std::move(num)), m_den(std::move(den)) {
    require_same_space(*m_num.space(), *m_den.space(), "rational function");
    reduce();
}

RationalFunction RationalFunction::zero(const VarSpacePtr& space) {
    return RationalFunction(Polynomial(space));
}

RationalFunction RationalFunction::constant(const VarSpacePtr& space, const Rat& value) {
    return RationalFunction(Polynomial(space, value));
}

const Polynomial& RationalFunction::as_polynomial() const {
    if (!is_polynomial()) throw std::logic_error("rational function is not a polynomial: " + str());
    return m_num;
}

void RationalFunction::reduce() {
    if (m_den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (m_num.is_zero()) {
        m_den = Polynomial(m_num.space(), Rat(1));
        return;
    }
    const Polynomial g = poly_gcd(m_num, m_den);
    if (!g.is_constant()) {
        m_num = exact_divide(m_num, g);
        m_den = exact_divide(m_den, g);
    }
    const Rat s = m_den.primitive_scale();
    m_num *= s;
    m_den *= s;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.m_num = -out.m_num;
    return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
    m_num = m_num * rhs.m_den + rhs.m_num * m_den;
    m_den = m_den * rhs.m_den;
    reduce();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
    m_num = m_num * rhs.m_den - rhs.m_num * m_den;
    m_den = m_den * rhs.m_den;
    reduce();
    return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
    m_num *= rhs.m_num;
    m_den *= rhs.m_den;
    reduce();
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero rational function");
    m_num *= rhs.m_den;
    m_den *= rhs.m_num;
    reduce();
    return *this;
}

RationalFunction& RationalFunction::operator*=(const Rat& s) {
    m_num *= s;
    reduce();
    return *this;
}

bool RationalFunction::operator==(const RationalFunction& rhs) const {
    return m_num == rhs.m_num && m_den == rhs.m_den;
}

RationalFunction RationalFunction::pow(int n) const {
    if (n >= 0) {
        RationalFunction out(m_num.pow(n), m_den.pow(n));
        return out;
    }
    if (is_zero()) throw std::domain_error("negative power of zero");
    return RationalFunction(m_den.pow(-n), m_num.pow(-n));
}

RationalFunction RationalFunction::derivative(int var) const {
    Polynomial num = m_num.derivative(var) * m_den - m_num * m_den.derivative(var);
    Polynomial den = m_den * m_den;
    return RationalFunction(std::move(num), std::move(den));
}

int RationalFunction::degree() const {
    if (is_zero()) return kNegInfDeg;
    return m_num.degree() - m_den.degree();
}

bool RationalFunction::is_homogeneous() const {
    return m_num.is_homogeneous() && m_den.is_homogeneous();
}

std::string RationalFunction::str() const {
    if (is_polynomial()) return m_num.str();
    return "(" + m_num.str() + ")/(" + m_den.str() + ")";
}

RationalFunction substitute(const Polynomial& p, const std::vector<RationalFunction>& images) {
    if (static_cast<int>(images.size()) != p.space()->dim())
        throw std::invalid_argument("substitution needs one image per variable");
    const VarSpacePtr target = images.empty() ? p.space() : images.front().space();
    RationalFunction out = RationalFunction::zero(target);
    for (const auto& [e, c] : p.terms()) {
        RationalFunction term = RationalFunction::constant(target, c);
        for (int v = 0; v < p.space()->dim(); ++v) {
            const int k = e[static_cast<size_t>(v)];
            if (k > 0) term *= images[static_cast<size_t>(v)].pow(k);
        }
        out += term;
    }
    return out;
}

RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& images) {
    const RationalFunction den = substitute(f.den(), images);
    if (den.is_zero())
        throw std::domain_error("substitution sends denominator to zero");
    return substitute(f.num(), images) / den;
}

} // namespace starprod
