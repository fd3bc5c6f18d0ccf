#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "starprod/parse.hpp"
#include "starprod/pbw.hpp"
#include "starprod/specfile.hpp"

#include <random>

using namespace starprod;

namespace {

struct Fix {
    AlgebraSpec spec;
    GuttWorkspace ws;
    explicit Fix(const char* file)
        : spec(load_algebra_spec(std::string(STARPROD_DATA_DIR) + "/" + file)), ws(*spec.algebra) {}
    Polynomial P(const std::string& s) const { return parse_polynomial(s, spec.algebra->space()); }
};

Polynomial random_poly(std::mt19937_64& rng, const VarSpacePtr& space, int maxdeg, int nterms) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    Polynomial p(space);
    for (int t = 0; t < nterms; ++t) {
        Expvec e(static_cast<size_t>(space->dim()), 0);
        int budget = deg(rng);
        std::uniform_int_distribution<int> var(0, space->dim() - 1);
        while (budget-- > 0) e[static_cast<size_t>(var(rng))] += 1;
        p.add_term(e, Rat(coef(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("word reduction to the ordered basis") {
    Fix f("g54.lie");
    auto sp = f.spec.algebra->space();

    // X5 X4 = X4 X5 + X3
    PBWElement want(sp);
    want.add_term({3, 4}, Rat(1));
    want.add_term({2}, Rat(1));
    CHECK(f.ws.reduce_word({4, 3}) == want);
    CHECK(f.ws.reduce_word({4, 3}).str() == "x4*x5 + x3");

    // X4 X4 X3 X3 = X3^2 X4^2 + 4 X1 X3 X4 + 2 X1^2
    PBWElement want2(sp);
    want2.add_term({2, 2, 3, 3}, Rat(1));
    want2.add_term({0, 2, 3}, Rat(4));
    want2.add_term({0, 0}, Rat(2));
    CHECK(f.ws.reduce_word({3, 3, 2, 2}) == want2);

    // Already-normal words pass through.
    PBWElement id(sp);
    id.add_term({0, 2, 4}, Rat(1));
    CHECK(f.ws.reduce_word({0, 2, 4}) == id);
}

TEST_CASE("enveloping product is associative") {
    Fix f("g614.lie");
    auto sp = f.spec.algebra->space();
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> letter(0, 5);
    std::uniform_int_distribution<int> len(0, 3);
    auto random_el = [&]() {
        PBWElement e(sp);
        for (int t = 0; t < 2; ++t) {
            Word w;
            for (int i = len(rng); i > 0; --i) w.push_back(letter(rng));
            std::sort(w.begin(), w.end());
            e.add_term(w, Rat(letter(rng) - 2));
        }
        return e;
    };
    for (int trial = 0; trial < 100; ++trial) {
        PBWElement a = random_el(), b = random_el(), c = random_el();
        CHECK(f.ws.uea_mul(f.ws.uea_mul(a, b), c) == f.ws.uea_mul(a, f.ws.uea_mul(b, c)));
    }
}

TEST_CASE("symmetrization frozen values") {
    Fix f("g54.lie");
    auto sp = f.spec.algebra->space();

    PBWElement s45(sp); // sigma(x4 x5) = X4 X5 + 1/2 X3
    s45.add_term({3, 4}, Rat(1));
    s45.add_term({2}, Rat(1, 2));
    CHECK(f.ws.symmetrize(f.P("x4*x5")) == s45);

    PBWElement s34(sp); // sigma(x3 x4) = X3 X4 + 1/2 X1
    s34.add_term({2, 3}, Rat(1));
    s34.add_term({0}, Rat(1, 2));
    CHECK(f.ws.symmetrize(f.P("x3*x4")) == s34);

    PBWElement s455(sp); // sigma(x4 x5^2) = X4 X5^2 + X3 X5 + 1/3 X2
    s455.add_term({3, 4, 4}, Rat(1));
    s455.add_term({2, 4}, Rat(1));
    s455.add_term({1}, Rat(1, 3));
    CHECK(f.ws.symmetrize(f.P("x4*x5^2")) == s455);

    PBWElement s3344(sp); // sigma(x3^2 x4^2) = X3^2 X4^2 + 2 X1 X3 X4 + 1/2 X1^2
    s3344.add_term({2, 2, 3, 3}, Rat(1));
    s3344.add_term({0, 2, 3}, Rat(2));
    s3344.add_term({0, 0}, Rat(1, 2));
    CHECK(f.ws.symmetrize(f.P("x3^2*x4^2")) == s3344);

    // sigma of the quadratic invariant: central factors symmetrize freely.
    PBWElement sdelta(sp);
    sdelta.add_term({2, 2}, Rat(1, 2));
    sdelta.add_term({0, 4}, Rat(1));
    sdelta.add_term({1, 3}, Rat(-1));
    CHECK(f.ws.symmetrize(f.P("x3^2/2 + x1*x5 - x2*x4")) == sdelta);
}

TEST_CASE("symmetrize then decompose is the identity") {
    for (const char* file : {"g54.lie", "g612.lie", "g614.lie"}) {
        Fix f(file);
        std::mt19937_64 rng(31337);
        for (int trial = 0; trial < 12; ++trial) {
            Polynomial p = random_poly(rng, f.spec.algebra->space(), 5, 4);
            Polynomial back = f.ws.sigma_inverse(f.ws.symmetrize(p));
            CHECK(back == p);
        }
    }
}

TEST_CASE("graded decomposition reconstructs enveloping elements") {
    Fix f("g54.lie");
    auto sp = f.spec.algebra->space();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> letter(0, 4);
    for (int trial = 0; trial < 10; ++trial) {
        PBWElement u(sp);
        for (int t = 0; t < 3; ++t) {
            Word w;
            for (int i = 4; i > 0; --i) w.push_back(letter(rng));
            std::sort(w.begin(), w.end());
            u.add_term(w, Rat(letter(rng) - 1));
        }
        auto parts = f.ws.graded_decompose(u);
        PBWElement rebuilt(sp);
        for (const auto& [k, layer] : parts) {
            CHECK((layer.is_zero() || layer.degree() == k));
            CHECK(layer.is_homogeneous());
            rebuilt += f.ws.symmetrize(layer);
        }
        CHECK(rebuilt == u);
    }
}

TEST_CASE("ladder cochain frozen values") {
    Fix f("g54.lie");

    // Order zero is plain multiplication.
    CHECK(f.ws.gutt_cochain(0, f.P("x4*x5"), f.P("x3")) == f.P("x3*x4*x5"));

    // Order one is the Poisson bracket.
    CHECK(f.ws.gutt_cochain(1, f.P("x5"), f.P("x4")) == f.P("x3"));
    CHECK(f.ws.gutt_cochain(1, f.P("x4^2"), f.P("x3^2")) == f.P("4*x1*x3*x4"));
    CHECK(f.ws.gutt_cochain(1, f.P("x4^2"), f.P("x1*x5")) == f.P("-2*x1*x3*x4"));

    // Order two values.
    CHECK(f.ws.gutt_cochain(2, f.P("x5"), f.P("x4")).is_zero());
    CHECK(f.ws.gutt_cochain(2, f.P("x5^2"), f.P("x4")) == f.P("2/3*x2"));
    CHECK(f.ws.gutt_cochain(2, f.P("x5"), f.P("x4*x5")) == f.P("-x2/3"));
    CHECK(f.ws.gutt_cochain(2, f.P("x4^2"), f.P("x3^2")) == f.P("2*x1^2"));
    CHECK(f.ws.gutt_cochain(2, f.P("x3*x4"), f.P("x3*x4")) == f.P("-x1^2"));
    CHECK(f.ws.gutt_cochain(2, f.P("x1*x5"), f.P("x4^2")) == f.P("-2/3*x1^2"));

    const Polynomial delta = f.P("x3^2/2 + x1*x5 - x2*x4");
    CHECK(f.ws.gutt_cochain(2, delta, f.P("x4^2")) == f.P("x1^2/3"));
    CHECK(f.ws.gutt_cochain(2, f.P("x4") * delta, f.P("x4")) == f.P("x1^2/3"));
    CHECK(f.ws.gutt_cochain(2, delta, delta).is_zero());
    CHECK(f.ws.gutt_cochain(1, delta, delta).is_zero());
}

TEST_CASE("ladder cochain structural properties") {
    Fix f("g54.lie");
    auto sp = f.spec.algebra->space();
    std::mt19937_64 rng(271828);

    for (int trial = 0; trial < 8; ++trial) {
        Polynomial u = random_poly(rng, sp, 4, 3);
        Polynomial v = random_poly(rng, sp, 4, 3);
        // first order agrees with the Poisson bracket
        CHECK(f.ws.gutt_cochain(1, u, v) == poisson(*f.spec.algebra, u, v));
        // order parity under swapping arguments
        for (int n = 0; n <= 3; ++n) {
            Polynomial lhs = f.ws.gutt_cochain(n, u, v);
            Polynomial rhs = f.ws.gutt_cochain(n, v, u);
            if (n % 2) rhs = -rhs;
            CHECK(lhs == rhs);
        }
        // no constants enter: C_n(1, v) = 0 for n >= 1
        CHECK(f.ws.gutt_cochain(1, Polynomial(sp, Rat(1)), v).is_zero());
        CHECK(f.ws.gutt_cochain(2, Polynomial(sp, Rat(1)), v).is_zero());
    }

    // Degree shift: on homogeneous inputs of degrees r and s the order-n
    // component is homogeneous of degree r + s - n.
    std::uniform_int_distribution<int> var(0, 4);
    for (int trial = 0; trial < 12; ++trial) {
        Expvec eu(5, 0), ev(5, 0);
        for (int i = 0; i < 3; ++i) eu[static_cast<size_t>(var(rng))] += 1;
        for (int i = 0; i < 4; ++i) ev[static_cast<size_t>(var(rng))] += 1;
        Polynomial u = Polynomial::monomial(sp, eu);
        Polynomial v = Polynomial::monomial(sp, ev);
        for (int n = 0; n <= 4; ++n) {
            Polynomial c = f.ws.gutt_cochain(n, u, v);
            CHECK(c.is_homogeneous());
            if (!c.is_zero()) CHECK(c.degree() == 7 - n);
        }
    }
}
