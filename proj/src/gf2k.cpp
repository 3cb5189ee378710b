#include "subtrace/gf2k.hpp"

namespace subtrace {

namespace {

// Lexicographically least monic irreducible of each degree 1..16 over GF(2),
// found once by exhaustive search; regenerated and checked by the test suite.
constexpr std::uint32_t kDefaultModulus[17] = {
    0,       0x2,    0x7,    0xB,    0x13,   0x25,   0x43,    0x83,   0x11B,
    0x203,   0x409,  0x805,  0x1009, 0x201B, 0x4021, 0x8003,  0x1002B,
};

unsigned bit_degree(std::uint32_t v) {
    unsigned d = 0;
    while (v >> (d + 1))
        ++d;
    return d;
}

// Remainder of a modulo b in GF(2)[x], both as bit vectors, b != 0.
std::uint32_t gf2_polymod(std::uint32_t a, std::uint32_t b) {
    unsigned db = bit_degree(b);
    while (a != 0) {
        unsigned da = bit_degree(a);
        if (da < db)
            break;
        a ^= b << (da - db);
    }
    return a;
}

std::shared_ptr<const LogTables> build_log_tables(unsigned k, std::uint32_t mod) {
    const std::uint32_t q = 1u << k;
    auto mul = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t r = 0;
        while (b) {
            if (b & 1)
                r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & q)
                a ^= mod;
        }
        return r;
    };
    // Find a generator of the multiplicative group, then tabulate its powers.
    for (std::uint32_t g = 1; g < q; ++g) {
        std::vector<std::uint16_t> log(q, 0);
        std::vector<std::uint16_t> exp(2 * q, 0);
        std::uint32_t x = 1;
        bool generator = true;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            if (i > 0 && x == 1) {
                generator = false;  // order of g divides i < q-1
                break;
            }
            exp[i] = static_cast<std::uint16_t>(x);
            log[x] = static_cast<std::uint16_t>(i);
            x = mul(x, g);
        }
        if (!generator)
            continue;
        // Second period covers every index mul and inv can form:
        // mul reads log[a]+log[b] <= 2q-4, inv reads (q-1)-log[a] <= q-1.
        for (std::uint32_t i = q - 1; i <= 2 * q - 3; ++i)
            exp[i] = exp[i - (q - 1)];
        auto t = std::make_shared<LogTables>();
        t->log = std::move(log);
        t->exp = std::move(exp);
        return t;
    }
    throw Error("no multiplicative generator found; modulus cannot be irreducible");
}

}  // namespace

bool Field::is_irreducible_gf2(std::uint32_t poly, unsigned deg) {
    if (deg == 0 || bit_degree(poly) != deg)
        return false;
    for (unsigned d = 1; d <= deg / 2; ++d)
        for (std::uint32_t div = 1u << d; div < (2u << d); ++div)
            if (gf2_polymod(poly, div) == 0)
                return false;
    return true;
}

std::uint32_t Field::default_modulus(unsigned k) {
    if (k < 1 || k > 16)
        throw UnsupportedDegree("field degree k must be in 1..16, got " +
                                std::to_string(k));
    return kDefaultModulus[k];
}

Field::Field(unsigned k) : Field(k, default_modulus(k)) {}

Field::Field(unsigned k, std::uint32_t modulus) : k_(k), mod_(modulus) {
    if (k < 1 || k > 16)
        throw UnsupportedDegree("field degree k must be in 1..16, got " +
                                std::to_string(k));
    q_ = 1u << k;
    if (bit_degree(modulus) != k)
        throw UnsupportedDegree("modulus must be monic of degree exactly " +
                                std::to_string(k));
    if (!is_irreducible_gf2(modulus, k))
        throw ReducibleModulus("modulus " + std::to_string(modulus) +
                               " is reducible over GF(2)");
    if (k <= 8)
        tables_ = build_log_tables(k, modulus);
}

elem Field::mul_ref(elem a, elem b) const {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & q_)
            a ^= mod_;
    }
    return r;
}

elem Field::inv(elem a) const {
    if (a == 0)
        throw DivisionByZero("inverse of zero");
    if (tables_)
        return tables_->exp[(q_ - 1) - tables_->log[a]];
    return pow(a, q_ - 2);
}

elem Field::pow(elem a, std::uint64_t e) const {
    elem r = 1;
    elem x = a;
    while (e) {
        if (e & 1)
            r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

unsigned Field::trace_to_gf2(elem a) const {
    elem acc = a;
    elem x = a;
    for (unsigned i = 1; i < k_; ++i) {
        x = mul(x, x);
        acc ^= x;
    }
    // The absolute trace lands in GF(2) for every element.
    if (acc > 1)
        throw Error("absolute trace left the prime field; modulus wiring is broken");
    return acc;
}

std::vector<elem> Field::elements() const {
    std::vector<elem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i)
        out[i] = i;
    return out;
}

std::string elem_pretty(const Field& f, elem a) {
    if (a == 0)
        return "0";
    std::string out;
    for (unsigned i = f.k(); i-- > 0;) {
        if (!(a >> i & 1))
            continue;
        if (!out.empty())
            out += "+";
        if (i == 0)
            out += "1";
        else if (i == 1)
            out += "a";
        else
            out += "a^" + std::to_string(i);
    }
    return out;
}

}  // namespace subtrace
