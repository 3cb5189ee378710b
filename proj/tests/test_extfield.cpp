#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "doctest.h"
#include "subtrace/extfield.hpp"

using namespace subtrace;

namespace {

struct Lcg {
    std::uint64_t state = 0xda3e39cb94b95bdbull;
    std::uint64_t next(std::uint64_t bound) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 33) % bound;
    }
};

// Horner evaluation of a base-field polynomial at an extension element.
ExtElem eval_at(const ExtField& E, const Poly& p, const ExtElem& beta) {
    ExtElem acc = E.zero();
    for (int i = p.degree(); i >= 0; --i)
        acc = E.eadd(E.emul(acc, beta),
                     E.embed_base(p.coeffs[static_cast<size_t>(i)]));
    return acc;
}

}  // namespace

TEST_CASE("tower construction picks the least modulus and validates pins") {
    Field f2(1);
    ExtField E(f2, 4);
    CHECK(E.modulus() == poly_make(f2, {1, 1, 0, 0, 1}));
    CHECK(E.order() == 16);
    CHECK(E.n() == 4);
    CHECK(E.base() == f2);

    Poly other = poly_make(f2, {1, 0, 0, 1, 1});  // x^4+x^3+1
    CHECK_NOTHROW(ExtField(f2, 4, other));
    CHECK_THROWS_AS(ExtField(f2, 4, poly_make(Field(2), {1, 0, 0, 0, 1})),
                    ParamsMismatch);
    CHECK_THROWS_AS(ExtField(f2, 4, poly_make(f2, {1, 1, 1})),
                    PreconditionViolated);
    CHECK_THROWS_AS(ExtField(f2, 4, poly_make(f2, {1, 0, 1, 0, 1})),
                    ReducibleModulus);
    CHECK_THROWS_AS(ExtField(f2, 0), DegreeTooSmall);
}

TEST_CASE("element indices round trip") {
    for (auto [k, n] : {std::pair<unsigned, unsigned>{1, 4}, {2, 2}, {3, 2}}) {
        ExtField E(Field(k), n);
        for (bigint i = 0; i < E.order(); ++i) {
            ExtElem a = E.from_index(i);
            CHECK(E.to_index(a) == i);
        }
        CHECK(E.to_index(E.zero()) == 0);
        CHECK(E.to_index(E.one()) == 1);
    }
}

TEST_CASE("extension arithmetic satisfies the field laws") {
    ExtField E(Field(2), 3);
    const std::uint64_t order = 64;
    Lcg rng;
    for (int i = 0; i < 300; ++i) {
        ExtElem a = E.from_index(bigint(rng.next(order)));
        ExtElem b = E.from_index(bigint(rng.next(order)));
        ExtElem c = E.from_index(bigint(rng.next(order)));
        CHECK(E.eadd(a, b) == E.eadd(b, a));
        CHECK(E.eadd(a, a) == E.zero());
        CHECK(E.emul(a, b) == E.emul(b, a));
        CHECK(E.emul(a, E.emul(b, c)) == E.emul(E.emul(a, b), c));
        CHECK(E.emul(a, E.eadd(b, c)) == E.eadd(E.emul(a, b), E.emul(a, c)));
        CHECK(E.emul(a, E.one()) == a);
        CHECK(E.epow(a, E.order()) == a);
        CHECK(E.epow(a, 0) == E.one());
    }
}

TEST_CASE("frobenius is the q power map and an automorphism of order n") {
    ExtField E(Field(2), 4);
    for (bigint i = 0; i < 16; ++i) {
        ExtElem a = E.from_index(i);
        CHECK(E.frobenius(a) == E.epow(a, E.base().q()));
        ExtElem b = a;
        for (unsigned j = 0; j < 4; ++j)
            b = E.frobenius(b);
        CHECK(b == a);
        for (bigint k = 0; k < 16; ++k) {
            ExtElem c = E.from_index(k);
            CHECK(E.frobenius(E.emul(a, c)) ==
                  E.emul(E.frobenius(a), E.frobenius(c)));
            CHECK(E.frobenius(E.eadd(a, c)) ==
                  E.eadd(E.frobenius(a), E.frobenius(c)));
        }
    }
}

TEST_CASE("base embedding is a ring homomorphism fixed by frobenius") {
    Field f(2);
    ExtField E(f, 3);
    for (elem a = 0; a < f.q(); ++a) {
        CHECK(E.frobenius(E.embed_base(a)) == E.embed_base(a));
        for (elem b = 0; b < f.q(); ++b) {
            CHECK(E.emul(E.embed_base(a), E.embed_base(b)) ==
                  E.embed_base(f.mul(a, b)));
            CHECK(E.eadd(E.embed_base(a), E.embed_base(b)) ==
                  E.embed_base(f.add(a, b)));
        }
    }
    // Tr(c) = n*c for base elements: c at odd n, 0 at even n.
    ExtField Eodd(f, 3), Eeven(f, 4);
    for (elem c = 0; c < f.q(); ++c) {
        CHECK(Eodd.trace(Eodd.embed_base(c)) == c);
        CHECK(Eeven.trace(Eeven.embed_base(c)) == 0);
    }
}

TEST_CASE("relative trace respects the tower structure") {
    ExtField E(Field(1), 4);
    for (bigint i = 0; i < 16; ++i) {
        ExtElem a = E.from_index(i);
        CHECK(E.rel_trace(a, 4) == a);
        CHECK(E.rel_trace(a, 1) == E.embed_base(E.trace(a)));
        // down to GF(q^2) and then to GF(q) equals the full trace
        ExtElem mid = E.rel_trace(a, 2);
        CHECK(E.frobenius(E.frobenius(mid)) == mid);
        // half-tower elements list each conjugate twice, so their trace is 0
        CHECK(E.trace(E.rel_trace(a, 2)) == 0);
    }
    CHECK_THROWS_AS(E.rel_trace(E.one(), 3), NotADivisor);
}

TEST_CASE("trace fibers all have size q^(n-1)") {
    for (auto [k, n] : {std::pair<unsigned, unsigned>{1, 4}, {2, 3}, {3, 2}}) {
        Field f(k);
        ExtField E(f, n);
        std::vector<std::uint64_t> fibers(f.q(), 0);
        std::uint64_t order = 1;
        for (unsigned i = 0; i < n; ++i)
            order *= f.q();
        for (std::uint64_t i = 0; i < order; ++i)
            ++fibers[E.trace(E.from_index(bigint(i)))];
        for (elem t = 0; t < f.q(); ++t)
            CHECK(fibers[t] == order / f.q());
    }
}

TEST_CASE("pair sum of conjugates equals the conjugate-product form") {
    for (auto [k, n] : {std::pair<unsigned, unsigned>{1, 2}, {1, 3}, {1, 4},
                        {1, 5}, {1, 6}, {1, 7}, {1, 8}, {2, 2}, {2, 3}, {2, 4},
                        {3, 2}, {3, 3}}) {
        Field f(k);
        ExtField E(f, n);
        std::uint64_t order = 1;
        for (unsigned i = 0; i < n; ++i)
            order *= f.q();
        for (std::uint64_t i = 0; i < order; ++i) {
            ExtElem a = E.from_index(bigint(i));
            CHECK(E.subtrace(a) == E.subtrace_conjugate_form(a));
        }
    }
}

TEST_CASE("minimal polynomials are irreducible divisor-degree annihilators") {
    Field f(1);
    ExtField E(f, 4);
    CHECK(minimal_polynomial(E, E.from_index(2)) == E.modulus());
    for (elem c = 0; c < f.q(); ++c)
        CHECK(minimal_polynomial(E, E.embed_base(c)) == poly_make(f, {c, 1}));
    for (bigint i = 0; i < 16; ++i) {
        ExtElem beta = E.from_index(i);
        Poly m = minimal_polynomial(E, beta);
        CHECK(is_irreducible(m));
        CHECK(4 % m.degree() == 0);
        CHECK(eval_at(E, m, beta) == E.zero());
        if (m.degree() == 4) {
            CHECK(E.trace(beta) == trace_of(m));
            CHECK(E.subtrace(beta) == subtrace_of(m));
        }
    }
}

TEST_CASE("orbit data ties element trace and subtrace to the minimal polynomial") {
    for (auto [k, n] : {std::pair<unsigned, unsigned>{1, 4}, {2, 2}, {1, 6}}) {
        ExtField E(Field(k), n);
        std::uint64_t order = 1;
        for (unsigned i = 0; i < n; ++i)
            order *= Field(k).q();
        for (std::uint64_t i = 0; i < order; ++i) {
            ExtElem beta = E.from_index(bigint(i));
            auto od = E.trace_subtrace_of_power_orbit(beta);
            CHECK(od.t == E.trace(beta));
            CHECK(od.s == E.subtrace(beta));
            CHECK(od.d ==
                  n / static_cast<unsigned>(minimal_polynomial(E, beta).degree()));
        }
    }
}

TEST_CASE("self-dual normal bases exist exactly when n is not divisible by 4") {
    ExtField E22(Field(1), 2);
    auto th22 = E22.find_self_dual_normal_basis();
    REQUIRE(th22.has_value());
    CHECK(E22.is_self_dual_normal(*th22));
    CHECK(E22.epsilon_of_basis(*th22) == 1);

    ExtField E23(Field(1), 3);
    auto th23 = E23.find_self_dual_normal_basis();
    REQUIRE(th23.has_value());
    CHECK(E23.is_self_dual_normal(*th23));
    CHECK_THROWS_AS(E23.epsilon_of_basis(*th23), PreconditionViolated);

    ExtField E24(Field(1), 4);
    CHECK_FALSE(E24.find_self_dual_normal_basis().has_value());

    ExtField E42(Field(2), 2);
    auto th42 = E42.find_self_dual_normal_basis();
    REQUIRE(th42.has_value());
    CHECK(E42.trace(*th42) == 1);  // orthonormality forces Tr(theta) = 1
    CHECK(Field(2).trace_to_gf2(E42.epsilon_of_basis(*th42)) == 1);

    ExtField E26(Field(1), 6);
    auto th26 = E26.find_self_dual_normal_basis();
    REQUIRE(th26.has_value());
    CHECK(Field(1).trace_to_gf2(E26.epsilon_of_basis(*th26)) == 1);

    CHECK_FALSE(E22.is_self_dual_normal(E22.one()));
    CHECK_THROWS_AS(E22.epsilon_of_basis(E22.one()), PreconditionViolated);
}

TEST_CASE("coordinate vectors are validated") {
    ExtField E(Field(2), 3);
    CHECK_THROWS_AS(E.emul(E.one(), ExtElem{1, 1}), ParamsMismatch);
    CHECK_THROWS_AS(E.trace(ExtElem{1, 1, 9}), ParamsMismatch);
    CHECK_THROWS_AS(E.subtrace(ExtElem(4, 0)), ParamsMismatch);
}

TEST_CASE("index list strings round trip") {
    ExtField E(Field(2), 3);
    ExtElem a{1, 0, 3};
    CHECK(ext_to_index_list(a) == "[1,0,3]");
    CHECK(ext_from_index_list(E, "[1,0,3]") == a);
    CHECK_THROWS_AS(ext_from_index_list(E, "[1,0]"), Error);
    CHECK_THROWS_AS(ext_from_index_list(E, "[1,0,4]"), Error);
}

TEST_CASE("trace and subtrace tallies do not depend on the modulus") {
    Field f(1);
    ExtField A(f, 4);
    ExtField B(f, 4, poly_make(f, {1, 0, 0, 1, 1}));
    std::map<std::pair<elem, elem>, unsigned> ta, tb;
    for (bigint i = 0; i < 16; ++i) {
        ExtElem a = A.from_index(i), b = B.from_index(i);
        ++ta[{A.trace(a), A.subtrace(a)}];
        ++tb[{B.trace(b), B.subtrace(b)}];
    }
    CHECK(ta == tb);
}
