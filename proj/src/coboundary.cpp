#include "starprod/coboundary.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace starprod {

namespace {

Rat expvec_factorial(const Expvec& a) {
    BigInt f = 1;
    for (int e : a) f *= factorial(e);
    return Rat(f);
}

Rat multi_binomial(const Expvec& a, const Expvec& b) {
    BigInt out = 1;
    for (size_t i = 0; i < a.size(); ++i) out *= binomial(BigInt(a[i]), BigInt(b[i]));
    return Rat(out);
}

bool expvec_le(const Expvec& a, const Expvec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool tuple_le(const IdxTuple& a, const IdxTuple& b) {
    for (size_t l = 0; l < a.size(); ++l)
        if (!expvec_le(a[l], b[l])) return false;
    return true;
}

Expvec expvec_sub(const Expvec& a, const Expvec& b) {
    Expvec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

std::string idx_tuple_str(const IdxTuple& t) {
    std::ostringstream out;
    for (size_t l = 0; l < t.size(); ++l) {
        if (l) out << " | ";
        out << '[';
        bool first = true;
        for (int v = 0; v < static_cast<int>(t[l].size()); ++v)
            for (int k = 0; k < t[l][static_cast<size_t>(v)]; ++k) {
                if (!first) out << ',';
                out << (v + 1);
                first = false;
            }
        out << ']';
    }
    return out.str();
}

} // namespace

Polynomial divided_power(const VarSpacePtr& space, const Expvec& a) {
    return Polynomial::monomial(space, a, Rat(1) / expvec_factorial(a));
}

MultiDiffOperator hochschild_delta(const MultiDiffOperator& C) {
    const int s = C.arity();
    const VarSpacePtr& space = C.space();
    MultiDiffOperator out(space, s + 1);
    const Expvec zero(static_cast<size_t>(space->dim()), 0);
    const Rat sign_last = ((s + 1) % 2 == 0) ? Rat(1) : Rat(-1);

    for (const auto& [idx, coef] : C.terms()) {
        IdxTuple front;
        front.reserve(static_cast<size_t>(s) + 1);
        front.push_back(zero);
        front.insert(front.end(), idx.begin(), idx.end());
        out.add_term(front, coef);

        for (int k = 1; k <= s; ++k) {
            const Rat sign = (k % 2 == 1) ? Rat(-1) : Rat(1);
            const Expvec& alpha = idx[static_cast<size_t>(k - 1)];
            Expvec beta(alpha.size(), 0);
            while (true) {
                IdxTuple t;
                t.reserve(static_cast<size_t>(s) + 1);
                for (int l = 0; l < k - 1; ++l) t.push_back(idx[static_cast<size_t>(l)]);
                t.push_back(beta);
                t.push_back(expvec_sub(alpha, beta));
                for (int l = k; l < s; ++l) t.push_back(idx[static_cast<size_t>(l)]);
                out.add_term(t, coef * (sign * multi_binomial(alpha, beta)));

                size_t i = 0;
                while (i < beta.size()) {
                    if (beta[i] < alpha[i]) {
                        ++beta[i];
                        break;
                    }
                    beta[i] = 0;
                    ++i;
                }
                if (i == beta.size()) break;
            }
        }

        IdxTuple back(idx);
        back.push_back(zero);
        out.add_term(back, coef * sign_last);
    }
    return out;
}

template <class Value>
static Value delta_eval_impl(const std::function<Value(const std::vector<Value>&)>& C,
                             const std::vector<Value>& args) {
    if (args.size() < 2)
        throw std::invalid_argument("coboundary evaluation needs at least two arguments");
    const int s = static_cast<int>(args.size()) - 1;

    std::vector<Value> head(args.begin() + 1, args.end());
    Value out = args.front() * C(head);

    for (int k = 1; k <= s; ++k) {
        std::vector<Value> merged;
        merged.reserve(static_cast<size_t>(s));
        for (int l = 0; l < k - 1; ++l) merged.push_back(args[static_cast<size_t>(l)]);
        merged.push_back(args[static_cast<size_t>(k - 1)] * args[static_cast<size_t>(k)]);
        for (int l = k + 1; l <= s; ++l) merged.push_back(args[static_cast<size_t>(l)]);
        const Value piece = C(merged);
        if (k % 2 == 1)
            out -= piece;
        else
            out += piece;
    }

    std::vector<Value> tail(args.begin(), args.end() - 1);
    const Value piece = C(tail) * args.back();
    if ((s + 1) % 2 == 1)
        out -= piece;
    else
        out += piece;
    return out;
}

Polynomial hochschild_delta_eval(const PolyCochainFn& C, const std::vector<Polynomial>& args) {
    return delta_eval_impl<Polynomial>(C, args);
}

RationalFunction hochschild_delta_eval(const CochainFn& C, const std::vector<RationalFunction>& args) {
    return delta_eval_impl<RationalFunction>(C, args);
}

MultiDiffOperator extract_operator(const CochainFn& fn, const VarSpacePtr& space, int arity,
                                   const ExtractOptions& opt) {
    if (arity < 1) throw std::invalid_argument("extraction arity must be positive");
    if (opt.order_bound < 0) throw std::invalid_argument("extraction order bound must be nonnegative");
    const int dim = space->dim();

    std::vector<int> vars;
    if (opt.derivative_vars) {
        vars = *opt.derivative_vars;
        for (int v : vars)
            if (v < 0 || v >= dim) throw std::invalid_argument("derivative variable index out of range");
    } else {
        vars.resize(static_cast<size_t>(dim));
        for (int v = 0; v < dim; ++v) vars[static_cast<size_t>(v)] = v;
    }

    std::vector<int> slot_cap(static_cast<size_t>(arity), opt.order_bound);
    if (opt.slot_order_bounds) {
        if (static_cast<int>(opt.slot_order_bounds->size()) != arity)
            throw std::invalid_argument("slot order bounds must match arity");
        for (int l = 0; l < arity; ++l)
            slot_cap[static_cast<size_t>(l)] =
                std::min(opt.order_bound, (*opt.slot_order_bounds)[static_cast<size_t>(l)]);
    }

    // Per-slot candidate multi-indices: all exponent vectors over the allowed
    // variables with total degree up to the slot cap.
    auto slot_indices = [&](int cap) {
        std::vector<Expvec> out;
        Expvec cur(static_cast<size_t>(dim), 0);
        std::function<void(size_t, int)> rec = [&](size_t vi, int remaining) {
            if (vi == vars.size()) {
                out.push_back(cur);
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                cur[static_cast<size_t>(vars[vi])] = e;
                rec(vi + 1, remaining - e);
            }
            cur[static_cast<size_t>(vars[vi])] = 0;
        };
        rec(0, cap);
        return out;
    };

    std::vector<std::vector<Expvec>> per_slot;
    per_slot.reserve(static_cast<size_t>(arity));
    for (int l = 0; l < arity; ++l) per_slot.push_back(slot_indices(slot_cap[static_cast<size_t>(l)]));

    std::vector<IdxTuple> candidates;
    IdxTuple cur_tuple;
    std::function<void(int, int)> build = [&](int slot, int used) {
        if (slot == arity) {
            candidates.push_back(cur_tuple);
            return;
        }
        for (const Expvec& a : per_slot[static_cast<size_t>(slot)]) {
            const int t = expvec_total(a);
            if (used + t > opt.order_bound) continue;
            cur_tuple.push_back(a);
            build(slot + 1, used + t);
            cur_tuple.pop_back();
        }
    };
    build(0, 0);
    std::sort(candidates.begin(), candidates.end(), IdxTupleLess{});

    // Triangular recovery at divided powers, ascending total order.
    MultiDiffOperator op(space, arity);
    for (const IdxTuple& tau : candidates) {
        std::vector<RationalFunction> args;
        args.reserve(static_cast<size_t>(arity));
        for (const Expvec& a : tau) args.emplace_back(divided_power(space, a));
        RationalFunction value = fn(args);
        for (const auto& [prev, coef] : op.terms()) {
            if (!tuple_le(prev, tau)) continue;
            RationalFunction leftover = coef;
            for (int l = 0; l < arity; ++l)
                leftover *= RationalFunction(
                    divided_power(space, expvec_sub(tau[static_cast<size_t>(l)], prev[static_cast<size_t>(l)])));
            value -= leftover;
        }
        if (value.is_zero()) continue;
        if (opt.coeff_degree_bound >= 0 && (value.num().degree() > opt.coeff_degree_bound ||
                                            value.den().degree() > opt.coeff_degree_bound)) {
            throw ExtractError(
                "extraction: coefficient at " + idx_tuple_str(tau) + " exceeds degree bound " +
                    std::to_string(opt.coeff_degree_bound),
                "coefficient " + value.str());
        }
        op.add_term(tau, value);
    }

    // Randomized verification sweep on monomial tuples over all variables.
    std::mt19937 rng(opt.seed);
    for (int trial = 0; trial < opt.sweep_samples; ++trial) {
        std::vector<RationalFunction> args;
        std::ostringstream point;
        args.reserve(static_cast<size_t>(arity));
        for (int l = 0; l < arity; ++l) {
            const int cap = slot_cap[static_cast<size_t>(l)] + opt.sweep_margin;
            const int deg = std::uniform_int_distribution<int>(0, cap)(rng);
            Expvec e(static_cast<size_t>(dim), 0);
            for (int j = 0; j < deg; ++j)
                ++e[static_cast<size_t>(std::uniform_int_distribution<int>(0, dim - 1)(rng))];
            Polynomial m = Polynomial::monomial(space, e);
            if (l) point << ", ";
            point << m.str();
            args.emplace_back(std::move(m));
        }
        const RationalFunction expected = fn(args);
        const RationalFunction got = op.apply(args);
        if (expected != got) {
            throw ExtractError("extraction: candidate operator disagrees with the map at (" +
                                   point.str() + ")",
                               "map gives " + expected.str() + ", operator gives " + got.str());
        }
    }
    return op;
}

MultiDiffOperator extract_operator(const PolyCochainFn& fn, const VarSpacePtr& space, int arity,
                                   const ExtractOptions& opt) {
    CochainFn wrapped = [&fn](const std::vector<RationalFunction>& args) {
        std::vector<Polynomial> polys;
        polys.reserve(args.size());
        for (const auto& a : args) polys.push_back(a.as_polynomial());
        return RationalFunction(fn(polys));
    };
    return extract_operator(wrapped, space, arity, opt);
}

} // namespace starprod
