#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "subtrace/polyring.hpp"

namespace subtrace {

enum class Kind { F, Fstar, P };

std::string kind_name(Kind kind);
std::optional<Kind> kind_parse(const std::string& name);

// Full (t, s) grid of exact counts for one degree.
struct CountTable {
    Field field;
    unsigned n;
    Kind kind;
    std::vector<bigint> entries;  // index t*q + s

    const bigint& at(elem t, elem s) const {
        return entries[static_cast<size_t>(t) * field.q() + s];
    }
    bigint& at(elem t, elem s) {
        return entries[static_cast<size_t>(t) * field.q() + s];
    }
    bigint total() const;
    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;
};

int mobius(unsigned d);
std::vector<unsigned> divisors(unsigned n);

// Number of monic irreducibles of degree n: (1/n) sum over all d | n of
// mu(d) q^(n/d).
bigint classical_count(const Field& f, unsigned n);
// Number with one fixed nonzero trace: (1/(qn)) sum over odd d | n.
bigint classical_count_trace_nonzero(const Field& f, unsigned n);

// Elements of GF(q) with given trace and subtrace; the pair sum over a single
// conjugate is empty, so only s = 0 is populated.
bigint F_one(const Field& f, elem t, elem s);

// Elements of GF(q^n) with trace t and subtrace s, by the closed forms.
bigint F_closed(const Field& f, unsigned n, elem t, elem s);
// n-tuples over GF(q) with coordinate sum t and pairwise product sum s.
bigint Fstar_closed(const Field& f, unsigned n, elem t, elem s);
// Same count through the recursion over tuple extensions; equals Fstar_closed.
bigint Fstar_recursive(const Field& f, unsigned n, elem t, elem s);
// F_one at n = 1, F_closed for n >= 2.
bigint F_dispatch(const Field& f, unsigned n, elem t, elem s);

// Monic irreducibles of degree n with trace t and subtrace s, by Moebius
// inversion over the F counts.
bigint P_count(const Field& f, unsigned n, elem t, elem s);

// Binary Lyndon words of length n with k_ones ones.
bigint lyndon_count(unsigned n, unsigned k_ones);
// GF(2) count of irreducibles by (trace, subtrace) bit via residue-class
// sums of Lyndon counts.
bigint lyndon_residue_count(unsigned n, unsigned trace_bit, unsigned subtrace_bit);

CountTable make_table(const Field& f, unsigned n, Kind kind);

}  // namespace subtrace
