#include "subtrace/counting.hpp"

#include <numeric>

namespace subtrace {

namespace {

bigint qpow(const Field& f, unsigned e) {
    return boost::multiprecision::pow(bigint(f.q()), e);
}

int sign_pow(unsigned e) { return (e & 1) ? -1 : 1; }

// v(s): q-1 at s = 0, -1 otherwise
bigint v_of(const Field& f, elem s) { return bigint(f.v_weight(s)); }

// chi(s/t^2) for t != 0
int chi_ratio(const Field& f, elem t, elem s) {
    return f.canonical_character(f.mul(s, f.inv(f.mul(t, t))));
}

void check_ts(const Field& f, elem t, elem s) {
    if (t >= f.q() || s >= f.q())
        throw PreconditionViolated("element index not below q");
}

bigint exact_div(const bigint& num, const bigint& den, const char* what) {
    if (num % den != 0)
        throw InexactDivision(std::string(what) + ": " + num.str() +
                              " not divisible by " + den.str());
    return num / den;
}

bigint binomial(unsigned n, unsigned k) {
    if (k > n)
        return 0;
    bigint r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: product of i consecutive integers
    }
    return r;
}

}  // namespace

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::F: return "F";
        case Kind::Fstar: return "Fstar";
        case Kind::P: return "P";
    }
    return "?";
}

std::optional<Kind> kind_parse(const std::string& name) {
    if (name == "F" || name == "f")
        return Kind::F;
    if (name == "Fstar" || name == "fstar" || name == "F*")
        return Kind::Fstar;
    if (name == "P" || name == "p")
        return Kind::P;
    return std::nullopt;
}

bigint CountTable::total() const {
    bigint t = 0;
    for (const bigint& e : entries)
        t += e;
    return t;
}

nlohmann::ordered_json CountTable::to_json() const {
    nlohmann::ordered_json j;
    j["q"] = field.q();
    j["k"] = field.k();
    j["n"] = n;
    j["kind"] = kind_name(kind);
    j["modulus"] = field.modulus();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (elem t = 0; t < field.q(); ++t)
        for (elem s = 0; s < field.q(); ++s) {
            nlohmann::ordered_json row;
            row["t"] = t;
            row["s"] = s;
            row["count"] = at(t, s).str();
            rows.push_back(std::move(row));
        }
    j["entries"] = std::move(rows);
    return j;
}

std::string CountTable::to_csv() const {
    std::string out = "t,s,count\n";
    for (elem t = 0; t < field.q(); ++t)
        for (elem s = 0; s < field.q(); ++s)
            out += std::to_string(t) + "," + std::to_string(s) + "," +
                   at(t, s).str() + "\n";
    return out;
}

int mobius(unsigned d) {
    if (d < 1)
        throw PreconditionViolated("mobius needs a positive integer");
    int r = 1;
    for (unsigned p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0)
                return 0;
            r = -r;
        }
    }
    if (d > 1)
        r = -r;
    return r;
}

std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0)
            out.push_back(d);
    return out;
}

bigint classical_count(const Field& f, unsigned n) {
    if (n < 1)
        throw DegreeTooSmall("degree must be >= 1");
    bigint acc = 0;
    for (unsigned d : divisors(n))
        acc += mobius(d) * qpow(f, n / d);
    return exact_div(acc, bigint(n), "classical count");
}

bigint classical_count_trace_nonzero(const Field& f, unsigned n) {
    if (n < 1)
        throw DegreeTooSmall("degree must be >= 1");
    bigint acc = 0;
    for (unsigned d : divisors(n))
        if (d % 2 == 1)
            acc += mobius(d) * qpow(f, n / d);
    return exact_div(acc, bigint(f.q()) * n, "fixed nonzero trace count");
}

bigint F_one(const Field& f, elem t, elem s) {
    check_ts(f, t, s);
    return s == 0 ? 1 : 0;
}

bigint F_closed(const Field& f, unsigned n, elem t, elem s) {
    if (n < 2)
        throw DegreeTooSmall("closed form needs degree >= 2");
    check_ts(f, t, s);
    const unsigned k = f.k();
    switch (n % 4) {
        case 1: {  // n = 4m+1
            unsigned m = n / 4;
            return qpow(f, n - 2) + sign_pow(m * k) * v_of(f, s) * qpow(f, 2 * m - 1);
        }
        case 3: {  // n = 4m-1
            unsigned m = (n + 1) / 4;
            elem arg = f.mul(t, t) ^ s;
            return qpow(f, n - 2) + sign_pow(m * k) * v_of(f, arg) * qpow(f, 2 * m - 2);
        }
        case 2: {  // n = 4m+2
            unsigned m = (n - 2) / 4;
            if (t == 0)
                return qpow(f, n - 2);
            return qpow(f, n - 2) -
                   sign_pow(m * k) * chi_ratio(f, t, s) * qpow(f, 2 * m);
        }
        default: {  // n = 4m
            unsigned m = n / 4;
            if (t == 0)
                return qpow(f, n - 2) -
                       sign_pow(m * k) * v_of(f, s) * qpow(f, 2 * m - 1);
            return qpow(f, n - 2);
        }
    }
}

bigint Fstar_closed(const Field& f, unsigned n, elem t, elem s) {
    if (n < 2)
        throw DegreeTooSmall("closed form needs degree >= 2");
    check_ts(f, t, s);
    const unsigned k = f.k();
    switch (n % 4) {
        case 1:
        case 3:
            // odd degrees agree with the element count
            return F_closed(f, n, t, s);
        case 2: {  // n = 4m+2
            unsigned m = (n - 2) / 4;
            if (t == 0)
                return qpow(f, n - 2);
            return qpow(f, n - 2) +
                   sign_pow(m * k) * chi_ratio(f, t, s) * qpow(f, 2 * m);
        }
        default: {  // n = 4m
            unsigned m = n / 4;
            if (t == 0)
                return qpow(f, n - 2) +
                       sign_pow(m * k) * v_of(f, s) * qpow(f, 2 * m - 1);
            return qpow(f, n - 2);
        }
    }
}

bigint Fstar_recursive(const Field& f, unsigned n, elem t, elem s) {
    if (n < 2)
        throw DegreeTooSmall("recursion needs degree >= 2");
    check_ts(f, t, s);
    const std::uint32_t q = f.q();
    // level 2 base: tuples (a, b) with a+b = t0, ab = s0
    std::vector<bigint> cur(static_cast<size_t>(q) * q);
    for (elem t0 = 0; t0 < q; ++t0)
        for (elem s0 = 0; s0 < q; ++s0) {
            bigint val;
            if (t0 == 0)
                val = 1;  // a = b = sqrt(s0), unique in characteristic 2
            else
                val = f.trace_to_gf2(f.mul(s0, f.inv(f.mul(t0, t0)))) == 0 ? 2 : 0;
            cur[static_cast<size_t>(t0) * q + s0] = val;
        }
    // one level per added coordinate
    for (unsigned lvl = 3; lvl <= n; ++lvl) {
        std::vector<bigint> next(static_cast<size_t>(q) * q);
        for (elem t0 = 0; t0 < q; ++t0)
            for (elem s0 = 0; s0 < q; ++s0) {
                bigint acc = 0;
                for (elem a = 0; a < q; ++a) {
                    elem t1 = t0 ^ a;
                    elem s1 = s0 ^ f.mul(a, t0) ^ f.mul(a, a);
                    acc += cur[static_cast<size_t>(t1) * q + s1];
                }
                next[static_cast<size_t>(t0) * q + s0] = std::move(acc);
            }
        cur = std::move(next);
    }
    return cur[static_cast<size_t>(t) * q + s];
}

bigint F_dispatch(const Field& f, unsigned n, elem t, elem s) {
    if (n < 1)
        throw DegreeTooSmall("degree must be >= 1");
    return n == 1 ? F_one(f, t, s) : F_closed(f, n, t, s);
}

bigint P_count(const Field& f, unsigned n, elem t, elem s) {
    if (n < 2)
        throw DegreeTooSmall("needs degree >= 2");
    check_ts(f, t, s);
    bigint acc = 0;
    if (t == 0) {
        for (unsigned d : divisors(n)) {
            if (d % 2 == 0)
                continue;
            bigint term = F_dispatch(f, n / d, 0, s);
            if (n % 2 == 0)
                term -= qpow(f, n / (2 * d) - 1);
            acc += mobius(d) * term;
        }
    } else {
        elem shifted = f.mul(t, t) ^ s;
        for (unsigned d : divisors(n)) {
            if (d % 4 == 1)
                acc += mobius(d) * F_dispatch(f, n / d, t, s);
            else if (d % 4 == 3)
                acc += mobius(d) * F_dispatch(f, n / d, t, shifted);
        }
    }
    bigint result = exact_div(acc, bigint(n), "irreducible count");
    if (result < 0)
        throw NegativeCount("irreducible count is negative: " + result.str());
    return result;
}

bigint lyndon_count(unsigned n, unsigned k_ones) {
    if (n < 1)
        throw DegreeTooSmall("length must be >= 1");
    if (k_ones > n)
        throw PreconditionViolated("more ones than positions");
    unsigned g = k_ones == 0 ? n : std::gcd(n, k_ones);
    bigint acc = 0;
    for (unsigned d : divisors(g))
        acc += mobius(d) * binomial(n / d, k_ones / d);
    return exact_div(acc, bigint(n), "Lyndon count");
}

bigint lyndon_residue_count(unsigned n, unsigned trace_bit, unsigned subtrace_bit) {
    if (n < 2)
        throw DegreeTooSmall("needs length >= 2");
    if (trace_bit > 1 || subtrace_bit > 1)
        throw PreconditionViolated("bits must be 0 or 1");
    unsigned c;
    if (trace_bit == 0)
        c = subtrace_bit == 0 ? 2 * n + 2 : 2 * n;
    else
        c = subtrace_bit == 0 ? 2 * n - 1 : 2 * n + 1;
    c %= 4;
    bigint acc = 0;
    for (unsigned k = 0; k <= n; ++k)
        if (k % 4 == c)
            acc += lyndon_count(n, k);
    return acc;
}

CountTable make_table(const Field& f, unsigned n, Kind kind) {
    if (n < 2)
        throw DegreeTooSmall("tables need degree >= 2");
    CountTable table{f, n, kind, {}};
    table.entries.resize(static_cast<size_t>(f.q()) * f.q());
    for (elem t = 0; t < f.q(); ++t)
        for (elem s = 0; s < f.q(); ++s) {
            switch (kind) {
                case Kind::F: table.at(t, s) = F_dispatch(f, n, t, s); break;
                case Kind::Fstar: table.at(t, s) = Fstar_closed(f, n, t, s); break;
                case Kind::P: table.at(t, s) = P_count(f, n, t, s); break;
            }
        }
    return table;
}

}  // namespace subtrace
