#include "subtrace/extfield.hpp"

#include <algorithm>

namespace subtrace {

namespace {

Poly validated_modulus(const Field& base, unsigned n, const Poly& modulus) {
    if (modulus.field != base)
        throw ParamsMismatch("extension modulus is over a different base field");
    if (modulus.degree() != static_cast<int>(n) || !modulus.is_monic())
        throw PreconditionViolated("extension modulus must be monic of degree " +
                                   std::to_string(n));
    if (n >= 2 && !is_irreducible(modulus))
        throw ReducibleModulus("extension modulus is reducible");
    return modulus;
}

}  // namespace

ExtField::ExtField(const Field& base, unsigned n, const Budget& budget)
    : base_(base), n_(n), mod_(poly_zero(base)) {
    if (n < 1)
        throw DegreeTooSmall("extension degree must be >= 1");
    mod_ = first_monic_irreducible(base, n, budget);
    build_tables();
}

ExtField::ExtField(const Field& base, unsigned n, const Poly& modulus)
    : base_(base), n_(n), mod_(validated_modulus(base, n, modulus)) {
    if (n < 1)
        throw DegreeTooSmall("extension degree must be >= 1");
    build_tables();
}

void ExtField::build_tables() {
    const unsigned n = n_;
    red_.assign(static_cast<size_t>(n) * n, 0);
    for (unsigned j = 0; j < n; ++j)
        red_[j] = mod_.coeffs[j];
    for (unsigned i = 1; i < n; ++i) {
        const elem* prev = &red_[(i - 1) * n];
        elem* row = &red_[i * n];
        elem top = prev[n - 1];
        row[0] = base_.mul(top, mod_.coeffs[0]);
        for (unsigned j = 1; j < n; ++j)
            row[j] = prev[j - 1] ^ base_.mul(top, mod_.coeffs[j]);
    }
    // (x^i)^q rows: successive products with x^q
    frob_.assign(static_cast<size_t>(n) * n, 0);
    frob_[0] = 1;
    if (n > 1) {
        ExtElem x = zero();
        x[1] = 1;
        ExtElem xq = epow(x, base_.q());
        ExtElem row(frob_.begin(), frob_.begin() + n);
        for (unsigned i = 1; i < n; ++i) {
            row = emul(row, xq);
            std::copy(row.begin(), row.end(), frob_.begin() + i * n);
        }
    }
    // traces of the basis vectors, by the defining sum
    tvec_.assign(n, 0);
    for (unsigned i = 0; i < n; ++i) {
        ExtElem h = zero();
        h[i] = 1;
        ExtElem acc = zero();
        for (unsigned j = 0; j < n; ++j) {
            acc = eadd(acc, h);
            h = frobenius(h);
        }
        tvec_[i] = coerce_base(acc);
    }
}

void ExtField::check_len(const ExtElem& a) const {
    if (a.size() != n_)
        throw ParamsMismatch("element has " + std::to_string(a.size()) +
                             " coordinates, expected " + std::to_string(n_));
    for (elem c : a)
        if (c >= base_.q())
            throw ParamsMismatch("coordinate index not below q");
}

elem ExtField::coerce_base(const ExtElem& a) const {
    for (unsigned i = 1; i < n_; ++i)
        if (a[i] != 0)
            throw Error("value expected in the base field has coordinate " +
                        std::to_string(i) + " = " + std::to_string(a[i]));
    return a[0];
}

bigint ExtField::order() const {
    return boost::multiprecision::pow(bigint(base_.q()), n_);
}

ExtElem ExtField::one() const {
    ExtElem a(n_, 0);
    a[0] = 1;
    return a;
}

ExtElem ExtField::embed_base(elem c) const {
    if (c >= base_.q())
        throw PreconditionViolated("element index not below q");
    ExtElem a(n_, 0);
    a[0] = c;
    return a;
}

ExtElem ExtField::from_index(const bigint& idx) const {
    if (idx < 0 || idx >= order())
        throw PreconditionViolated("element index out of range");
    ExtElem a(n_, 0);
    bigint v = idx;
    for (unsigned i = 0; i < n_; ++i) {
        a[i] = static_cast<elem>(v % base_.q());
        v /= base_.q();
    }
    return a;
}

bigint ExtField::to_index(const ExtElem& a) const {
    check_len(a);
    bigint idx = 0;
    for (unsigned i = n_; i-- > 0;)
        idx = idx * base_.q() + a[i];
    return idx;
}

ExtElem ExtField::eadd(const ExtElem& a, const ExtElem& b) const {
    check_len(a);
    check_len(b);
    ExtElem c(n_);
    for (unsigned i = 0; i < n_; ++i)
        c[i] = a[i] ^ b[i];
    return c;
}

ExtElem ExtField::emul(const ExtElem& a, const ExtElem& b) const {
    check_len(a);
    check_len(b);
    const unsigned n = n_;
    std::vector<elem> buf(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i)
        if (a[i])
            for (unsigned j = 0; j < n; ++j)
                buf[i + j] ^= base_.mul(a[i], b[j]);
    for (unsigned d = 2 * n - 2; d >= n && d > 0; --d) {
        elem top = buf[d];
        if (top) {
            const elem* row = &red_[(d - n) * n];
            for (unsigned i = 0; i < n; ++i)
                if (row[i])
                    buf[i] ^= base_.mul(top, row[i]);
        }
    }
    buf.resize(n);
    return buf;
}

ExtElem ExtField::epow(const ExtElem& a, const bigint& e) const {
    check_len(a);
    if (e < 0)
        throw PreconditionViolated("negative exponent");
    ExtElem r = one();
    if (e == 0)
        return r;
    for (long i = static_cast<long>(boost::multiprecision::msb(e)); i >= 0; --i) {
        r = emul(r, r);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i)))
            r = emul(r, a);
    }
    return r;
}

ExtElem ExtField::frobenius(const ExtElem& a) const {
    check_len(a);
    // GF(q)-linear since base coordinates are fixed by c -> c^q
    ExtElem out(n_, 0);
    for (unsigned i = 0; i < n_; ++i)
        if (a[i]) {
            const elem* row = &frob_[i * n_];
            for (unsigned j = 0; j < n_; ++j)
                if (row[j])
                    out[j] ^= base_.mul(a[i], row[j]);
        }
    return out;
}

ExtElem ExtField::rel_trace(const ExtElem& a, unsigned m) const {
    check_len(a);
    if (m < 1 || n_ % m != 0)
        throw NotADivisor(std::to_string(m) + " does not divide " +
                          std::to_string(n_));
    ExtElem acc = zero();
    ExtElem g = a;
    for (unsigned i = 0; i < n_ / m; ++i) {
        acc = eadd(acc, g);
        for (unsigned rep = 0; rep < m; ++rep)
            g = frobenius(g);
    }
    ExtElem shifted = acc;
    for (unsigned rep = 0; rep < m; ++rep)
        shifted = frobenius(shifted);
    if (shifted != acc)
        throw Error("relative trace not fixed by the subfield Frobenius");
    return acc;
}

elem ExtField::trace(const ExtElem& a) const {
    check_len(a);
    elem t = 0;
    for (unsigned i = 0; i < n_; ++i)
        if (a[i])
            t ^= base_.mul(a[i], tvec_[i]);
    return t;
}

elem ExtField::subtrace(const ExtElem& a) const {
    check_len(a);
    if (n_ < 2)
        throw DegreeTooSmall("subtrace needs extension degree >= 2");
    ExtElem conj = a;
    ExtElem prefix = a;
    ExtElem acc = zero();
    for (unsigned j = 1; j < n_; ++j) {
        conj = frobenius(conj);
        acc = eadd(acc, emul(conj, prefix));
        prefix = eadd(prefix, conj);
    }
    return coerce_base(acc);
}

elem ExtField::subtrace_conjugate_form(const ExtElem& a) const {
    check_len(a);
    if (n_ < 2)
        throw DegreeTooSmall("subtrace needs extension degree >= 2");
    const unsigned m = n_ / 2;
    elem acc = 0;
    ExtElem g = a;
    const unsigned limit = (n_ % 2 == 1) ? m : m - 1;
    for (unsigned e = 1; e <= limit; ++e) {
        g = frobenius(g);
        acc ^= trace(emul(a, g));
    }
    if (n_ % 2 == 0) {
        ExtElem gm = a;
        for (unsigned rep = 0; rep < m; ++rep)
            gm = frobenius(gm);
        ExtElem gamma = emul(a, gm);  // lies in GF(q^m)
        ExtElem half = zero();
        for (unsigned i = 0; i < m; ++i) {
            half = eadd(half, gamma);
            gamma = frobenius(gamma);
        }
        acc ^= coerce_base(half);
    }
    return acc;
}

ExtField::OrbitData ExtField::trace_subtrace_of_power_orbit(const ExtElem& a) const {
    check_len(a);
    if (n_ < 2)
        throw DegreeTooSmall("needs extension degree >= 2");
    elem t = trace(a);
    elem s = subtrace(a);
    Poly p = minimal_polynomial(*this, a);
    unsigned deg = static_cast<unsigned>(p.degree());
    if (deg == 0 || n_ % deg != 0)
        throw Error("minimal polynomial degree does not divide n");
    unsigned d = n_ / deg;
    elem tp = trace_of(p);
    elem sp = deg >= 2 ? subtrace_of(p) : 0;
    elem want_t = (d & 1) ? tp : 0;
    elem want_s = static_cast<elem>(((d & 1) ? sp : 0) ^
                                    ((d * (d - 1) / 2) & 1 ? base_.mul(tp, tp) : 0));
    if (t != want_t || s != want_s)
        throw Error("orbit identity violated: trace/subtrace do not match the "
                    "minimal polynomial relation");
    return OrbitData{t, s, d};
}

bool ExtField::is_self_dual_normal(const ExtElem& theta) const {
    check_len(theta);
    ExtElem c = theta;
    for (unsigned e = 0; e < n_; ++e) {
        if (trace(emul(theta, c)) != (e == 0 ? 1u : 0u))
            return false;
        c = frobenius(c);
    }
    return true;
}

std::optional<ExtElem> ExtField::find_self_dual_normal_basis(const Budget& budget) const {
    bigint count = order();
    budget.check_points(count > std::numeric_limits<std::uint64_t>::max()
                            ? std::numeric_limits<std::uint64_t>::max()
                            : static_cast<std::uint64_t>(count));
    auto start = Budget::clock::now();
    ExtElem theta = zero();
    std::uint64_t total = static_cast<std::uint64_t>(count);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if ((idx & 0xFFF) == 0)
            budget.check_time(start);
        if (is_self_dual_normal(theta))
            return theta;
        for (unsigned i = 0; i < n_; ++i) {
            if (++theta[i] < base_.q())
                break;
            theta[i] = 0;
        }
    }
    return std::nullopt;
}

elem ExtField::epsilon_of_basis(const ExtElem& theta) const {
    check_len(theta);
    if (n_ % 4 != 2)
        throw PreconditionViolated("defined only for degrees 2 mod 4");
    if (!is_self_dual_normal(theta))
        throw PreconditionViolated("element does not generate a self-dual "
                                   "normal basis");
    const unsigned m = n_ / 2;
    ExtElem gm = theta;
    for (unsigned rep = 0; rep < m; ++rep)
        gm = frobenius(gm);
    ExtElem gamma = emul(theta, gm);  // fixed by frobenius^m
    ExtElem half = zero();
    for (unsigned i = 0; i < m; ++i) {
        half = eadd(half, gamma);
        gamma = frobenius(gamma);
    }
    return coerce_base(half);
}

Poly minimal_polynomial(const ExtField& E, const ExtElem& beta) {
    std::vector<ExtElem> orbit;
    ExtElem c = beta;
    do {
        orbit.push_back(c);
        c = E.frobenius(c);
    } while (c != beta);
    // product of (x + conjugate), coefficients in the extension
    std::vector<ExtElem> pc{E.one()};
    for (const ExtElem& r : orbit) {
        std::vector<ExtElem> next(pc.size() + 1, E.zero());
        for (size_t i = 0; i < pc.size(); ++i) {
            next[i + 1] = E.eadd(next[i + 1], pc[i]);
            next[i] = E.eadd(next[i], E.emul(pc[i], r));
        }
        pc = std::move(next);
    }
    std::vector<elem> coeffs(pc.size());
    for (size_t i = 0; i < pc.size(); ++i) {
        // coercion throws if any coefficient fails to land in the base field
        for (size_t j = 1; j < pc[i].size(); ++j)
            if (pc[i][j] != 0)
                throw Error("minimal polynomial coefficient not in the base field");
        coeffs[i] = pc[i][0];
    }
    return Poly{E.base(), std::move(coeffs)};
}

std::string ext_to_index_list(const ExtElem& a) {
    std::string out = "[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(a[i]);
    }
    return out + "]";
}

ExtElem ext_from_index_list(const ExtField& E, const std::string& text) {
    ExtElem a = parse_index_list(E.base(), text);
    if (a.size() != E.n())
        throw PreconditionViolated("coordinate list must have exactly " +
                                   std::to_string(E.n()) + " entries");
    return a;
}

}  // namespace subtrace
