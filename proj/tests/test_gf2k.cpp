#include <cstdint>
#include <vector>

#include "doctest.h"
#include "subtrace/gf2k.hpp"

using namespace subtrace;

namespace {

// Deterministic sample stream so property checks are reproducible.
struct Lcg {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    std::uint32_t next(std::uint32_t bound) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::uint32_t>((state >> 33) % bound);
    }
};

}  // namespace

TEST_CASE("default modulus is the least irreducible of each degree") {
    for (unsigned k = 1; k <= 16; ++k) {
        std::uint32_t least = 0;
        for (std::uint32_t p = 1u << k; p < (2u << k); ++p)
            if (Field::is_irreducible_gf2(p, k)) {
                least = p;
                break;
            }
        CHECK(least != 0);
        CHECK(Field::default_modulus(k) == least);
        CHECK(Field(k).modulus() == least);
    }
}

TEST_CASE("constructor rejects bad degrees and reducible moduli") {
    CHECK_THROWS_AS(Field(0), UnsupportedDegree);
    CHECK_THROWS_AS(Field(17), UnsupportedDegree);
    CHECK_THROWS_AS(Field(3, 0x9), ReducibleModulus);   // x^3+1 = (x+1)(x^2+x+1)
    CHECK_THROWS_AS(Field(3, 0x7), UnsupportedDegree);  // degree 2, not 3
    CHECK_THROWS_AS(Field(3, 0x1B), UnsupportedDegree);
    CHECK_NOTHROW(Field(3, 0xD));  // x^3+x^2+1, the other degree-3 irreducible
}

TEST_CASE("field axioms hold exhaustively at small k") {
    for (unsigned k : {1u, 2u, 3u, 4u}) {
        Field f(k);
        const std::uint32_t q = f.q();
        for (elem a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.add(a, a) == 0);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            for (elem b = 0; b < q; ++b) {
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (elem c = 0; c < q; ++c) {
                    CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("field axioms hold on sampled triples at large k") {
    for (unsigned k : {8u, 11u, 16u}) {
        Field f(k);
        Lcg rng;
        for (int i = 0; i < 2000; ++i) {
            elem a = rng.next(f.q()), b = rng.next(f.q()), c = rng.next(f.q());
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

TEST_CASE("table multiply matches the shift-and-xor reference bit for bit") {
    for (unsigned k = 1; k <= 8; ++k) {
        Field f(k);
        REQUIRE(f.has_log_tables());
        for (elem a = 0; a < f.q(); ++a)
            for (elem b = 0; b < f.q(); ++b)
                CHECK(f.mul(a, b) == f.mul_ref(a, b));
    }
    CHECK_FALSE(Field(9).has_log_tables());
}

TEST_CASE("inverses multiply to one and zero has none") {
    for (unsigned k : {1u, 2u, 3u, 5u, 8u}) {
        Field f(k);
        CHECK_THROWS_AS(f.inv(0), DivisionByZero);
        for (elem a = 1; a < f.q(); ++a)
            CHECK(f.mul(a, f.inv(a)) == 1);
    }
    Field big(12);
    CHECK_THROWS_AS(big.inv(0), DivisionByZero);
    Lcg rng;
    for (int i = 0; i < 500; ++i) {
        elem a = 1 + rng.next(big.q() - 1);
        CHECK(big.mul(a, big.inv(a)) == 1);
    }
}

TEST_CASE("GF(2) log tables cover the inverse lookup") {
    // Regression: the antilog wraparound once stopped at index 2q-4, which at
    // q = 2 left exp[1] unset and made inv(1) = 0.
    Field f(1);
    CHECK(f.inv(1) == 1);
    CHECK(f.mul(1, 1) == 1);
    CHECK(f.trace_to_gf2(0) == 0);
    CHECK(f.trace_to_gf2(1) == 1);
    CHECK(f.canonical_character(0) == 1);
    CHECK(f.canonical_character(1) == -1);
}

TEST_CASE("power map satisfies the field exponent identities") {
    for (unsigned k : {1u, 3u, 6u, 10u}) {
        Field f(k);
        const std::uint32_t q = f.q();
        Lcg rng;
        for (int i = 0; i < 200; ++i) {
            elem a = rng.next(q);
            CHECK(f.pow(a, q) == a);
            if (a != 0)
                CHECK(f.pow(a, q - 1) == 1);
            CHECK(f.pow(a, 0) == 1);
            CHECK(f.sqrt(f.mul(a, a)) == a);
            CHECK(f.mul(f.sqrt(a), f.sqrt(a)) == a);
        }
    }
}

TEST_CASE("absolute trace is additive, Frobenius-stable, and balanced") {
    for (unsigned k : {1u, 2u, 3u, 4u, 7u, 8u}) {
        Field f(k);
        std::uint32_t ones = 0;
        for (elem a = 0; a < f.q(); ++a) {
            unsigned t = f.trace_to_gf2(a);
            CHECK(t <= 1);
            CHECK(f.trace_to_gf2(f.mul(a, a)) == t);
            ones += t;
        }
        CHECK(ones == f.q() / 2);  // trace is onto GF(2), fibers are equal
        for (elem a = 0; a < f.q(); ++a)
            for (elem b = 0; b < f.q(); ++b)
                CHECK(f.trace_to_gf2(f.add(a, b)) ==
                      (f.trace_to_gf2(a) ^ f.trace_to_gf2(b)));
    }
}

TEST_CASE("canonical character is multiplicative over addition and sums to zero") {
    for (unsigned k : {1u, 2u, 4u, 6u}) {
        Field f(k);
        long long total = 0;
        for (elem a = 0; a < f.q(); ++a)
            total += f.canonical_character(a);
        CHECK(total == 0);
        Lcg rng;
        for (int i = 0; i < 300; ++i) {
            elem a = rng.next(f.q()), b = rng.next(f.q());
            CHECK(f.canonical_character(f.add(a, b)) ==
                  f.canonical_character(a) * f.canonical_character(b));
        }
    }
}

TEST_CASE("v weight matches its definition and sums to zero") {
    for (unsigned k : {1u, 3u, 5u}) {
        Field f(k);
        long long total = 0;
        for (elem s = 0; s < f.q(); ++s) {
            CHECK(f.v_weight(s) == (s == 0 ? (long long)f.q() - 1 : -1));
            total += f.v_weight(s);
        }
        CHECK(total == 0);
    }
}

TEST_CASE("trace properties hold under a non-default modulus") {
    Field f(3, 0xD);
    std::uint32_t ones = 0;
    for (elem a = 0; a < f.q(); ++a) {
        for (elem b = 1; b < f.q(); ++b)
            CHECK(f.mul(f.inv(b), f.mul(b, a)) == a);
        ones += f.trace_to_gf2(a);
    }
    CHECK(ones == 4);
}

TEST_CASE("element display uses the power basis in the letter a") {
    Field f(3);
    CHECK(elem_pretty(f, 0) == "0");
    CHECK(elem_pretty(f, 1) == "1");
    CHECK(elem_pretty(f, 2) == "a");
    CHECK(elem_pretty(f, 3) == "a+1");
    CHECK(elem_pretty(f, 4) == "a^2");
    CHECK(elem_pretty(f, 7) == "a^2+a+1");
    CHECK(f.elements().size() == 8);
    CHECK(f.elements()[5] == 5);
}
