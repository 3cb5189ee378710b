#pragma once

#include <optional>

#include "subtrace/polyring.hpp"

namespace subtrace {

// Element of GF(q^n) in the polynomial basis: coordinate i is the base-field
// element multiplying x^i. Length always equals the extension degree.
using ExtElem = std::vector<elem>;

class ExtField {
public:
    // Picks the least monic irreducible of degree n in coefficient-index order.
    ExtField(const Field& base, unsigned n, const Budget& budget = {});
    ExtField(const Field& base, unsigned n, const Poly& modulus);

    const Field& base() const { return base_; }
    unsigned n() const { return n_; }
    const Poly& modulus() const { return mod_; }
    bigint order() const;

    ExtElem zero() const { return ExtElem(n_, 0); }
    ExtElem one() const;
    ExtElem embed_base(elem a) const;
    ExtElem from_index(const bigint& idx) const;
    bigint to_index(const ExtElem& a) const;

    ExtElem eadd(const ExtElem& a, const ExtElem& b) const;
    ExtElem emul(const ExtElem& a, const ExtElem& b) const;
    ExtElem epow(const ExtElem& a, const bigint& e) const;
    ExtElem frobenius(const ExtElem& a) const;  // a -> a^q

    // Trace down the tower to GF(q^m): sum of a^(q^(m*i)). Needs m | n.
    // The result is verified to be fixed by the m-fold Frobenius.
    ExtElem rel_trace(const ExtElem& a, unsigned m) const;

    elem trace(const ExtElem& a) const;
    elem subtrace(const ExtElem& a) const;  // pair sum of conjugates, n >= 2

    // Same value as subtrace, through sums of traces of conjugate products:
    // n = 2m+1: sum_{e=1..m} Tr(a^(q^e+1));
    // n = 2m:   sum_{e=1..m-1} Tr(a^(q^e+1)) + Tr over the half tower of a^(q^m+1).
    elem subtrace_conjugate_form(const ExtElem& a) const;

    struct OrbitData {
        elem t, s;   // trace and subtrace of the element
        unsigned d;  // n / deg(minimal polynomial)
    };
    // Also checks t = d*Tr(p) and s = d*St(p) + C(d,2)*Tr(p)^2 against the
    // minimal polynomial p, with d and C(d,2) reduced mod 2.
    OrbitData trace_subtrace_of_power_orbit(const ExtElem& a) const;

    // First theta (by index) whose Frobenius conjugates are orthonormal under
    // the trace form: Tr(theta^(q^i) * theta^(q^j)) = 1 iff i = j.
    std::optional<ExtElem> find_self_dual_normal_basis(const Budget& budget = {}) const;

    // Tr down from GF(q^(n/2)) of theta^(q^(n/2)+1); needs n = 2 mod 4 and an
    // orthonormal-conjugate theta.
    elem epsilon_of_basis(const ExtElem& theta) const;

    bool is_self_dual_normal(const ExtElem& theta) const;

    bool operator==(const ExtField& o) const {
        return base_ == o.base_ && mod_ == o.mod_;
    }
    bool operator!=(const ExtField& o) const { return !(*this == o); }

private:
    Field base_;
    unsigned n_;
    Poly mod_;
    std::vector<elem> red_;   // row i: x^(n+i) reduced mod the modulus
    std::vector<elem> frob_;  // row i: (x^i)^q reduced
    std::vector<elem> tvec_;  // tvec_[i] = trace of x^i

    void build_tables();
    void check_len(const ExtElem& a) const;
    elem coerce_base(const ExtElem& a) const;
};

// Monic polynomial over the base field whose roots are the Frobenius orbit.
Poly minimal_polynomial(const ExtField& E, const ExtElem& beta);

std::string ext_to_index_list(const ExtElem& a);
ExtElem ext_from_index_list(const ExtField& E, const std::string& text);

}  // namespace subtrace
