#include "starprod/lie_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace starprod {

std::string ValidationReport::str() const {
    if (ok) return "ok";
    std::ostringstream out;
    for (size_t i = 0; i < issues.size(); ++i) {
        if (i) out << "\n";
        out << issues[i].check << ": " << issues[i].detail;
    }
    return out.str();
}

LieAlgebra::LieAlgebra(std::string name, VarSpacePtr space)
    : m_name(std::move(name)), m_space(std::move(space)) {
    const size_t m = static_cast<size_t>(dim());
    m_c.assign(m, std::vector<std::vector<Rat>>(m, std::vector<Rat>(m, Rat(0))));
}

void LieAlgebra::set_bracket(int i, int j, std::vector<Rat> coeffs) {
    if (i < 0 || j < 0 || i >= dim() || j >= dim())
        throw std::invalid_argument("bracket index out of range");
    if (i == j) throw std::invalid_argument("bracket [x_i, x_i] is zero and cannot be set");
    if (static_cast<int>(coeffs.size()) != dim())
        throw std::invalid_argument("bracket coefficient vector has wrong length");
    for (int k = 0; k < dim(); ++k) {
        m_c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = coeffs[static_cast<size_t>(k)];
        m_c[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(k)] = -coeffs[static_cast<size_t>(k)];
    }
}

const Rat& LieAlgebra::c(int i, int j, int k) const {
    return m_c.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)).at(static_cast<size_t>(k));
}

Polynomial LieAlgebra::bracket(int i, int j) const {
    Polynomial out(m_space);
    for (int k = 0; k < dim(); ++k) {
        const Rat& coef = c(i, j, k);
        if (coef != 0) out += Polynomial::variable(m_space, k, coef);
    }
    return out;
}

void LieAlgebra::add_invariant(Polynomial inv) {
    require_same_space(*m_space, *inv.space(), "invariant declaration");
    m_invariants.push_back(std::move(inv));
}

ValidationReport LieAlgebra::validate() const {
    ValidationReport report;
    const int m = dim();

    // Jacobi identity on basis triples: coefficients of x_l in
    // [[xi,xj],xk] + [[xj,xk],xi] + [[xk,xi],xj] must vanish.
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            for (int k = j + 1; k < m; ++k) {
                for (int l = 0; l < m; ++l) {
                    Rat acc(0);
                    for (int s = 0; s < m; ++s) {
                        acc += c(i, j, s) * c(s, k, l);
                        acc += c(j, k, s) * c(s, i, l);
                        acc += c(k, i, s) * c(s, j, l);
                    }
                    if (acc != 0) {
                        report.ok = false;
                        std::ostringstream d;
                        d << "fails on (" << m_space->name(i) << ", " << m_space->name(j)
                          << ", " << m_space->name(k) << "): coefficient of "
                          << m_space->name(l) << " is " << rat_str(acc);
                        report.issues.push_back({"jacobi", d.str()});
                    }
                }
            }
        }
    }

    // Triangularity: for i > j, [x_i, x_j] must involve only x_k with k < j.
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            for (int k = j; k < m; ++k) {
                if (c(i, j, k) != 0) {
                    report.ok = false;
                    std::ostringstream d;
                    d << "[" << m_space->name(i) << ", " << m_space->name(j)
                      << "] has component " << m_space->name(k)
                      << " at or above " << m_space->name(j);
                    report.issues.push_back({"triangular", d.str()});
                }
            }
        }
    }

    // Declared invariants must be Poisson-central.
    for (const Polynomial& inv : m_invariants) {
        const auto bad = poisson_noncentral_witness(*this, RationalFunction(inv));
        if (bad) {
            report.ok = false;
            std::ostringstream d;
            d << "declared invariant " << inv.str() << " has {inv, "
              << m_space->name(*bad) << "} != 0";
            report.issues.push_back({"invariant", d.str()});
        }
    }

    return report;
}

namespace {

template <typename T>
T poisson_impl(const LieAlgebra& L, const T& u, const T& v) {
    T out = u; // shape only
    out -= u;  // zero of the right space
    const int m = L.dim();
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            T pair = u.derivative(i) * v.derivative(j) - u.derivative(j) * v.derivative(i);
            if (pair.is_zero()) continue;
            for (int k = 0; k < m; ++k) {
                const Rat& coef = L.c(i, j, k);
                if (coef != 0) out += T(Polynomial::variable(L.space(), k, coef)) * pair;
            }
        }
    }
    return out;
}

} // namespace

Polynomial poisson(const LieAlgebra& L, const Polynomial& u, const Polynomial& v) {
    require_same_space(*L.space(), *u.space(), "poisson bracket");
    require_same_space(*L.space(), *v.space(), "poisson bracket");
    return poisson_impl(L, u, v);
}

RationalFunction poisson(const LieAlgebra& L, const RationalFunction& u, const RationalFunction& v) {
    require_same_space(*L.space(), *u.space(), "poisson bracket");
    require_same_space(*L.space(), *v.space(), "poisson bracket");
    return poisson_impl(L, u, v);
}

std::optional<int> poisson_noncentral_witness(const LieAlgebra& L, const RationalFunction& f) {
    for (int i = 0; i < L.dim(); ++i) {
        const RationalFunction xi(Polynomial::variable(L.space(), i));
        if (!poisson(L, f, xi).is_zero()) return i;
    }
    return std::nullopt;
}

} // namespace starprod
