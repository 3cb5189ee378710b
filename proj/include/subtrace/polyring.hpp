#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subtrace/budget.hpp"
#include "subtrace/errors.hpp"
#include "subtrace/gf2k.hpp"

namespace subtrace {

using bigint = boost::multiprecision::cpp_int;

// coeffs[i] is the coefficient of x^i; trailing zeros are trimmed, so the
// zero polynomial has empty coeffs and degree() == -1.
struct Poly {
    Field field;
    std::vector<elem> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }

    bool operator==(const Poly& o) const {
        return field == o.field && coeffs == o.coeffs;
    }
};

// Trims trailing zeros and validates that every coefficient is below q.
Poly poly_make(const Field& f, std::vector<elem> coeffs);
Poly poly_zero(const Field& f);
Poly poly_one(const Field& f);
Poly poly_x(const Field& f);

Poly padd(const Poly& a, const Poly& b);
Poly pmul(const Poly& a, const Poly& b);
Poly pmod(const Poly& a, const Poly& b);
Poly pgcd(const Poly& a, const Poly& b);  // monic gcd; pgcd(0,0) = 0
Poly ppowmod(const Poly& a, const bigint& e, const Poly& m);

// Reference test: x^(q^d) congruent to x mod f plus gcd conditions at the
// maximal proper divisor degrees.
bool is_irreducible(const Poly& f);
// Trial division by every monic polynomial of degree 1..deg/2; the blunt
// oracle the reference test is checked against.
bool is_irreducible_trial(const Poly& f);

// All monic irreducibles of degree n in ascending index order, where a
// polynomial maps to the integer sum coeff_i * q^i over i < n (the monic
// leading coefficient is implicit). The optional filter restricts to
// coefficient of x^(n-1) equal to t and coefficient of x^(n-2) equal to s.
std::vector<Poly> enumerate_monic_irreducibles(
    const Field& f, unsigned n,
    std::optional<std::pair<elem, elem>> trace_subtrace = std::nullopt,
    const Budget& budget = {}, unsigned threads = 1);

// First monic irreducible of degree n in the same order.
Poly first_monic_irreducible(const Field& f, unsigned n, const Budget& budget = {});

// Tally of monic irreducibles of degree n by (trace, subtrace), flat index
// t*q + s. Ground truth for the P counts.
std::vector<std::uint64_t> tally_monic_irreducibles(const Field& f, unsigned n,
                                                    const Budget& budget = {},
                                                    unsigned threads = 1);

elem trace_of(const Poly& f);     // coefficient of x^(deg-1); monic, deg >= 1
elem subtrace_of(const Poly& f);  // coefficient of x^(deg-2); monic, deg >= 2

std::string poly_to_string(const Poly& f);      // "x^3+2*x^2+3*x+1"
std::string poly_to_index_list(const Poly& f);  // "[1,3,2,0,1]", ascending powers
Poly poly_from_index_list(const Field& f, const std::string& text);
// Raw form of the list above: entries kept as written, no trailing-zero trim.
std::vector<elem> parse_index_list(const Field& f, const std::string& text);

}  // namespace subtrace
