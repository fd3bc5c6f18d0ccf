#include "starprod/ladder.hpp"

#include <sstream>

namespace starprod {

BilinearCochain::BilinearCochain(MultiDiffOperator op) {
    if (op.arity() != 2) throw std::invalid_argument("ladder cochains are bilinear");
    for (const auto& [idx, coef] : op.terms())
        if (!coef.is_polynomial())
            throw std::invalid_argument("ladder cochains need polynomial coefficients");
    auto shared = std::make_shared<const MultiDiffOperator>(std::move(op));
    m_op = *shared;
    m_fn = [shared](const Polynomial& u, const Polynomial& v) { return shared->apply({u, v}); };
}

Polynomial BilinearCochain::operator()(const Polynomial& u, const Polynomial& v) const {
    if (!m_fn) throw std::logic_error("empty cochain evaluated");
    return m_fn(u, v);
}

CochainLadder::CochainLadder(VarSpacePtr space, std::vector<BilinearCochain> entries)
    : m_space(std::move(space)), m_entries(std::move(entries)) {
    if (m_entries.empty()) throw std::invalid_argument("a ladder needs at least the order-0 cochain");
}

const BilinearCochain& CochainLadder::entry(int n) const {
    if (!has(n)) throw std::invalid_argument("ladder has no cochain of order " + std::to_string(n));
    return m_entries[static_cast<size_t>(n)];
}

Polynomial CochainLadder::apply(int n, const Polynomial& u, const Polynomial& v) const {
    require_same_space(*m_space, *u.space(), "ladder evaluation");
    require_same_space(*m_space, *v.space(), "ladder evaluation");
    return entry(n)(u, v);
}

void CochainLadder::set_entry(int n, BilinearCochain c) {
    if (n < 0 || n > top() + 1)
        throw std::invalid_argument("ladder entries must be replaced or appended contiguously");
    if (n == top() + 1)
        m_entries.push_back(std::move(c));
    else
        m_entries[static_cast<size_t>(n)] = std::move(c);
}

CochainLadder make_gutt_ladder(std::shared_ptr<GuttWorkspace> ws, int N) {
    if (!ws) throw std::invalid_argument("workspace required");
    if (N < 0) throw std::invalid_argument("ladder order must be nonnegative");
    std::vector<BilinearCochain> entries;
    entries.reserve(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        entries.emplace_back([ws, n](const Polynomial& u, const Polynomial& v) {
            return ws->gutt_cochain(n, u, v);
        });
    return CochainLadder(ws->space(), std::move(entries));
}

FormalSeries::FormalSeries(VarSpacePtr space, std::vector<Polynomial> coefficients)
    : m_space(std::move(space)), m_coefficients(std::move(coefficients)) {
    if (m_coefficients.empty()) throw std::invalid_argument("a series needs an order-0 coefficient");
    for (const auto& c : m_coefficients) require_same_space(*m_space, *c.space(), "series coefficient");
}

const Polynomial& FormalSeries::coefficient(int n) const {
    if (n < 0 || n > order())
        throw std::invalid_argument("series has no coefficient of order " + std::to_string(n));
    return m_coefficients[static_cast<size_t>(n)];
}

std::string FormalSeries::str() const {
    std::ostringstream out;
    out << m_coefficients[0].str();
    for (int n = 1; n <= order(); ++n) {
        const Polynomial& c = m_coefficients[static_cast<size_t>(n)];
        const std::string power = (n == 1) ? "v" : "v^" + std::to_string(n);
        if (c.is_zero()) {
            out << " + 0*" << power;
        } else if (c.terms().size() == 1 && c.terms().begin()->second > 0) {
            out << " + " << c.str() << "*" << power;
        } else if (c.terms().size() == 1) {
            out << " - " << (-c).str() << "*" << power;
        } else {
            out << " + (" << c.str() << ")*" << power;
        }
    }
    return out.str();
}

FormalSeries star_truncated(const CochainLadder& ladder, const Polynomial& u, const Polynomial& v,
                            int N) {
    if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
    if (N > ladder.top())
        throw std::invalid_argument("product truncated at order " + std::to_string(N) +
                                    " but the ladder stops at order " + std::to_string(ladder.top()));
    std::vector<Polynomial> coeffs;
    coeffs.reserve(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) coeffs.push_back(ladder.apply(n, u, v));
    return FormalSeries(ladder.space(), std::move(coeffs));
}

Polynomial associator_defect(const CochainLadder& ladder, int k, const Polynomial& u,
                             const Polynomial& v, const Polynomial& w) {
    if (k < 0) throw std::invalid_argument("associativity order must be nonnegative");
    if (ladder.top() < k - 1)
        throw std::invalid_argument("associativity at order " + std::to_string(k) +
                                    " needs cochains through order " + std::to_string(k - 1));
    // With C_k present, include the r = 0 and s = 0 terms: the sum is the
    // full residual and vanishes iff the product is associative at order k.
    // Without C_k the inner sum (r, s >= 1) is the cocycle delta(C_k) has to
    // match.
    const int lo = ladder.has(k) ? 0 : 1;
    Polynomial out(ladder.space());
    for (int r = lo; r + lo <= k; ++r) {
        const int s = k - r;
        out += ladder.apply(r, ladder.apply(s, u, v), w);
        out -= ladder.apply(r, u, ladder.apply(s, v, w));
    }
    return out;
}

CochainLadder gauge_transform(const CochainLadder& ladder,
                              const std::map<int, MultiDiffOperator>& T_series, int N) {
    if (N < 0) throw std::invalid_argument("gauge order must be nonnegative");
    if (ladder.top() < N)
        throw std::invalid_argument("gauge transform through order " + std::to_string(N) +
                                    " needs an equally deep ladder");
    for (const auto& [k, T] : T_series) {
        if (k < 1) throw std::invalid_argument("gauge series indices start at 1");
        if (T.arity() != 1) throw std::invalid_argument("gauge series entries must be unary");
        require_same_space(*ladder.space(), *T.space(), "gauge series");
        for (const auto& [idx, coef] : T.terms()) {
            (void)coef;
            if (expvec_total(idx[0]) == 0)
                throw std::invalid_argument("gauge series entries must vanish on constants");
        }
    }

    // Shared evaluation core, captured by every conjugated cochain.
    struct Core {
        CochainLadder base;
        std::map<int, MultiDiffOperator> T;

        Polynomial t_apply(int k, const Polynomial& p) const {
            if (k == 0) return p;
            auto it = T.find(k);
            if (it == T.end()) return Polynomial(base.space());
            return it->second.apply({p});
        }

        // Coefficients of the inverse series: S_0 = Id, S_n = -sum S_i T_{n-i}.
        Polynomial s_apply(int i, const Polynomial& p) const {
            if (i == 0) return p;
            Polynomial out(base.space());
            for (const auto& [k, op] : T) {
                if (k > i) break;
                out -= s_apply(i - k, op.apply({p}));
            }
            return out;
        }
    };
    auto core = std::make_shared<Core>(Core{ladder, T_series});

    std::vector<BilinearCochain> entries;
    entries.reserve(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        entries.emplace_back([core, n](const Polynomial& u, const Polynomial& v) {
            Polynomial out(core->base.space());
            for (int a = 0; a <= n; ++a) {
                if (a != 0 && core->T.find(a) == core->T.end()) continue;
                const Polynomial tu = core->t_apply(a, u);
                if (tu.is_zero()) continue;
                for (int b = 0; a + b <= n; ++b) {
                    if (b != 0 && core->T.find(b) == core->T.end()) continue;
                    const Polynomial tv = core->t_apply(b, v);
                    if (tv.is_zero()) continue;
                    for (int c = 0; a + b + c <= n; ++c) {
                        const int i = n - a - b - c;
                        out += core->s_apply(i, core->base.apply(c, tu, tv));
                    }
                }
            }
            return out;
        });
    return CochainLadder(ladder.space(), std::move(entries));
}

} // namespace starprod
