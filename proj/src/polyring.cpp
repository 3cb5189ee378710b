#include "subtrace/polyring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <thread>

namespace subtrace {

namespace {

void check_same_field(const Poly& a, const Poly& b) {
    if (a.field != b.field)
        throw ParamsMismatch("polynomials over different fields");
}

std::vector<elem> trim(std::vector<elem> c) {
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    return c;
}

// q^n saturating at 2^64-1, for budget checks.
std::uint64_t checked_pow(std::uint64_t q, unsigned n) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / q)
            return std::numeric_limits<std::uint64_t>::max();
        r *= q;
    }
    return r;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

// ---- packed GF(2) kernel: a polynomial is a bit vector, bit i = coeff of x^i

unsigned bit_deg64(std::uint64_t v) {
    return 63u - static_cast<unsigned>(__builtin_clzll(v));
}

std::uint64_t polymod64(std::uint64_t a, std::uint64_t b) {
    unsigned db = bit_deg64(b);
    while (a != 0) {
        unsigned da = bit_deg64(a);
        if (da < db)
            break;
        a ^= b << (da - db);
    }
    return a;
}

std::uint64_t polygcd64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t r = polymod64(a, b);
        a = b;
        b = r;
    }
    return a;
}

const std::array<std::uint16_t, 256>& spread_table() {
    static const std::array<std::uint16_t, 256> t = [] {
        std::array<std::uint16_t, 256> out{};
        for (unsigned v = 0; v < 256; ++v) {
            unsigned s = 0;
            for (unsigned i = 0; i < 8; ++i)
                if (v >> i & 1)
                    s |= 1u << (2 * i);
            out[v] = static_cast<std::uint16_t>(s);
        }
        return out;
    }();
    return t;
}

// Square of a GF(2) polynomial: interleave the bits with zeros.
std::uint64_t square_bits(std::uint32_t v) {
    const auto& t = spread_table();
    return static_cast<std::uint64_t>(t[v & 0xFF]) |
           static_cast<std::uint64_t>(t[(v >> 8) & 0xFF]) << 16 |
           static_cast<std::uint64_t>(t[(v >> 16) & 0xFF]) << 32 |
           static_cast<std::uint64_t>(t[(v >> 24) & 0xFF]) << 48;
}

// x^(2^n) == x mod f plus gcd checks at the maximal proper divisor degrees.
bool rabin_gf2(std::uint32_t f, unsigned n, const std::vector<unsigned>& primes) {
    std::uint64_t h = 2;  // x
    for (unsigned j = 1; j <= n; ++j) {
        h = polymod64(square_bits(static_cast<std::uint32_t>(h)), f);
        if (j < n)
            for (unsigned p : primes)
                if (j == n / p && polygcd64(h ^ 2u, f) != 1)
                    return false;
    }
    return h == 2;
}

struct Gf2ScanCtx {
    unsigned n;
    std::vector<std::uint32_t> small_irr;  // irreducibles of degree 2..D
    unsigned covered;                      // factors of degree <= covered are excluded
    std::vector<unsigned> primes;          // prime factors of n
};

Gf2ScanCtx make_gf2_ctx(unsigned n) {
    Gf2ScanCtx ctx;
    ctx.n = n;
    unsigned D = std::min(8u, n / 2);
    for (unsigned d = 2; d <= D; ++d)
        for (std::uint32_t p = 1u << d; p < (2u << d); ++p)
            if (Field::is_irreducible_gf2(p, d))
                ctx.small_irr.push_back(p);
    ctx.covered = std::max(1u, D);
    ctx.primes = prime_factors(n);
    return ctx;
}

bool test_gf2(const Gf2ScanCtx& ctx, std::uint32_t idx) {
    if (!(idx & 1))
        return false;  // root at 0
    std::uint32_t poly = idx | (1u << ctx.n);
    if (__builtin_popcount(poly) % 2 == 0)
        return false;  // root at 1
    for (std::uint32_t g : ctx.small_irr)
        if (polymod64(poly, g) == 0)
            return false;
    if (ctx.n <= 2 * ctx.covered + 1)
        return true;
    return rabin_gf2(poly, ctx.n, ctx.primes);
}

// ---- dense kernel for k > 1, log-table multiplies on raw coefficient arrays

struct DenseScanCtx {
    Field field;
    unsigned n;
    std::uint32_t q;
    std::vector<std::pair<elem, elem>> quads;  // irreducible x^2 + c1 x + c0
    std::vector<unsigned> primes;
    // scratch, reused across candidates
    std::vector<elem> red;   // n rows of n: x^(n+i) mod candidate
    std::vector<elem> h;     // current power of x
    std::vector<elem> buf;   // squaring buffer, length 2n-1

    DenseScanCtx(const Field& f, unsigned n_arg)
        : field(f), n(n_arg), q(f.q()), red(n_arg * n_arg), h(n_arg),
          buf(2 * n_arg - 1) {
        for (elem c1 = 0; c1 < q; ++c1)
            for (elem c0 = 0; c0 < q; ++c0) {
                bool has_root = false;
                for (elem e = 0; e < q && !has_root; ++e)
                    if ((field.mul(field.add(e, c1), e) ^ c0) == 0)
                        has_root = true;
                if (!has_root)
                    quads.emplace_back(c1, c0);
            }
        primes = prime_factors(n);
    }
};

// Remainder check of the monic candidate c (degree n) by x^2 + c1 x + c0.
bool quad_divides(const DenseScanCtx& ctx, const elem* c, elem c1, elem c0) {
    // Synthetic division, tracking only two working coefficients.
    const Field& f = ctx.field;
    elem a = 1, b = c[ctx.n - 1];  // coefficients of the two highest terms
    for (unsigned i = ctx.n - 1; i >= 2; --i) {
        elem t = b ^ f.mul(a, c1);
        b = c[i - 1] ^ f.mul(a, c0);
        a = t;
    }
    // remainder = (b + a*c1) x + (c0*a + ...) folded once more
    elem r1 = b ^ f.mul(a, c1);
    elem r0 = c[0] ^ f.mul(a, c0);
    return r1 == 0 && r0 == 0;
}

int dense_deg(const std::vector<elem>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i])
            return i;
    return -1;
}

// gcd degree of a (arbitrary) and the monic candidate c of degree n.
int gcd_degree_with_candidate(const DenseScanCtx& ctx, std::vector<elem> a,
                              const elem* c) {
    const Field& f = ctx.field;
    std::vector<elem> b(c, c + ctx.n);
    b.push_back(1);
    // Euclid on (b, a); both vectors shrink monotonically.
    std::vector<elem> x = std::move(b), y = std::move(a);
    while (true) {
        int dy = dense_deg(y);
        if (dy < 0)
            return dense_deg(x);
        int dx = dense_deg(x);
        while (dx >= dy) {
            elem scale = f.mul(x[dx], f.inv(y[dy]));
            for (int i = 0; i <= dy; ++i)
                x[dx - dy + i] ^= f.mul(scale, y[i]);
            while (dx >= 0 && x[dx] == 0)
                --dx;
        }
        std::swap(x, y);
    }
}

bool rabin_dense(DenseScanCtx& ctx, const elem* c) {
    const Field& f = ctx.field;
    const unsigned n = ctx.n;
    // reduction rows: x^(n+i) mod candidate
    for (unsigned j = 0; j < n; ++j)
        ctx.red[j] = c[j];
    for (unsigned i = 1; i < n; ++i) {
        const elem* prev = &ctx.red[(i - 1) * n];
        elem* row = &ctx.red[i * n];
        elem top = prev[n - 1];
        row[0] = f.mul(top, c[0]);
        for (unsigned j = 1; j < n; ++j)
            row[j] = prev[j - 1] ^ f.mul(top, c[j]);
    }
    std::fill(ctx.h.begin(), ctx.h.end(), 0);
    ctx.h[1] = 1;  // x
    const unsigned k = f.k();
    for (unsigned j = 1; j <= n; ++j) {
        for (unsigned rep = 0; rep < k; ++rep) {
            std::fill(ctx.buf.begin(), ctx.buf.end(), 0);
            for (unsigned i = 0; i < n; ++i)
                if (ctx.h[i])
                    ctx.buf[2 * i] = f.mul(ctx.h[i], ctx.h[i]);
            for (unsigned d = 2 * n - 2; d >= n; --d) {
                elem top = ctx.buf[d];
                if (top) {
                    const elem* row = &ctx.red[(d - n) * n];
                    for (unsigned i = 0; i < n; ++i)
                        if (row[i])
                            ctx.buf[i] ^= f.mul(top, row[i]);
                }
            }
            std::copy(ctx.buf.begin(), ctx.buf.begin() + n, ctx.h.begin());
        }
        if (j < n)
            for (unsigned p : ctx.primes)
                if (j == n / p) {
                    std::vector<elem> diff(ctx.h.begin(), ctx.h.begin() + n);
                    diff[1] ^= 1;  // h - x
                    if (gcd_degree_with_candidate(ctx, std::move(diff), c) != 0)
                        return false;
                }
    }
    for (unsigned i = 0; i < n; ++i)
        if (ctx.h[i] != (i == 1 ? 1u : 0u))
            return false;
    return true;
}

bool test_dense(DenseScanCtx& ctx, const elem* c) {
    const Field& f = ctx.field;
    if (c[0] == 0)
        return false;
    for (elem e = 1; e < ctx.q; ++e) {
        elem val = 1;
        for (unsigned i = ctx.n; i-- > 0;)
            val = f.mul(val, e) ^ c[i];
        if (val == 0)
            return false;
    }
    if (ctx.n <= 3)
        return true;
    for (auto [c1, c0] : ctx.quads)
        if (quad_divides(ctx, c, c1, c0))
            return false;
    if (ctx.n <= 5)
        return true;
    return rabin_dense(ctx, c);
}

// Scans candidate indices [lo, hi); calls sink(idx, coeffs) on irreducibles.
// The sink returns false to stop early. Returns false if stopped.
template <class Sink>
bool scan_range(const Field& f, unsigned n, std::uint64_t lo, std::uint64_t hi,
                const Budget& budget, Budget::clock::time_point start,
                Sink&& sink) {
    std::uint64_t seen = 0;
    if (f.k() == 1) {
        Gf2ScanCtx ctx = make_gf2_ctx(n);
        std::vector<elem> coeffs(n);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if ((++seen & 0xFFFF) == 0)
                budget.check_time(start);
            if (!test_gf2(ctx, static_cast<std::uint32_t>(idx)))
                continue;
            for (unsigned i = 0; i < n; ++i)
                coeffs[i] = static_cast<elem>(idx >> i & 1);
            if (!sink(idx, coeffs.data()))
                return false;
        }
        return true;
    }
    DenseScanCtx ctx(f, n);
    std::vector<elem> digits(n);
    std::uint64_t v = lo;
    for (unsigned i = 0; i < n; ++i) {
        digits[i] = static_cast<elem>(v % ctx.q);
        v /= ctx.q;
    }
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if ((++seen & 0xFFFF) == 0)
            budget.check_time(start);
        if (test_dense(ctx, digits.data()))
            if (!sink(idx, digits.data()))
                return false;
        // odometer increment
        for (unsigned i = 0; i < n; ++i) {
            if (++digits[i] < ctx.q)
                break;
            digits[i] = 0;
        }
    }
    return true;
}

struct ScanBounds {
    std::uint64_t lo, hi;
};

ScanBounds scan_bounds(const Field& f, unsigned n,
                       std::optional<std::pair<elem, elem>> filter) {
    std::uint64_t total = checked_pow(f.q(), n);
    if (!filter)
        return {0, total};
    std::uint64_t block = checked_pow(f.q(), n - 2);
    std::uint64_t base = filter->first * (block * f.q()) + filter->second * block;
    return {base, base + block};
}

// Splits [lo, hi) into chunks, one worker per chunk, merging results in
// chunk order so the outcome is independent of the thread count.
template <class Result, class Work>
std::vector<Result> run_chunked(std::uint64_t lo, std::uint64_t hi,
                                unsigned threads, Work&& work) {
    unsigned t = std::max(1u, threads);
    std::uint64_t span = hi - lo;
    t = static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(span, 1)));
    std::vector<Result> results(t);
    if (t == 1) {
        work(lo, hi, results[0]);
        return results;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (unsigned i = 0; i < t; ++i) {
        std::uint64_t a = lo + span * i / t;
        std::uint64_t b = lo + span * (i + 1) / t;
        pool.emplace_back([&, i, a, b] {
            try {
                work(a, b, results[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return results;
}

}  // namespace

Poly poly_make(const Field& f, std::vector<elem> coeffs) {
    for (elem c : coeffs)
        if (c >= f.q())
            throw PreconditionViolated("coefficient index " + std::to_string(c) +
                                       " is not below q = " + std::to_string(f.q()));
    return Poly{f, trim(std::move(coeffs))};
}

Poly poly_zero(const Field& f) { return Poly{f, {}}; }
Poly poly_one(const Field& f) { return Poly{f, {1}}; }
Poly poly_x(const Field& f) { return Poly{f, {0, 1}}; }

Poly padd(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    std::vector<elem> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        c[i] ^= a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i)
        c[i] ^= b.coeffs[i];
    return Poly{a.field, trim(std::move(c))};
}

Poly pmul(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero())
        return poly_zero(a.field);
    std::vector<elem> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (a.coeffs[i])
            for (size_t j = 0; j < b.coeffs.size(); ++j)
                c[i + j] ^= a.field.mul(a.coeffs[i], b.coeffs[j]);
    return Poly{a.field, trim(std::move(c))};
}

Poly pmod(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (b.is_zero())
        throw DivisionByZero("polynomial division by zero");
    std::vector<elem> r = a.coeffs;
    const Field& f = a.field;
    int db = b.degree();
    elem lead_inv = f.inv(b.coeffs.back());
    while (static_cast<int>(r.size()) - 1 >= db) {
        elem top = r.back();
        if (top != 0) {
            elem scale = f.mul(top, lead_inv);
            size_t shift = r.size() - 1 - db;
            for (int i = 0; i <= db; ++i)
                r[shift + i] ^= f.mul(scale, b.coeffs[i]);
        }
        r.pop_back();
        while (!r.empty() && r.back() == 0)
            r.pop_back();
    }
    return Poly{f, std::move(r)};
}

Poly pgcd(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = pmod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero())
        return x;
    elem scale = a.field.inv(x.coeffs.back());
    for (elem& c : x.coeffs)
        c = a.field.mul(c, scale);
    return x;
}

Poly ppowmod(const Poly& a, const bigint& e, const Poly& m) {
    check_same_field(a, m);
    if (m.is_zero())
        throw DivisionByZero("power modulo the zero polynomial");
    if (e < 0)
        throw PreconditionViolated("negative exponent");
    Poly r = pmod(poly_one(a.field), m);
    if (e == 0)
        return r;
    Poly base = pmod(a, m);
    for (long i = static_cast<long>(boost::multiprecision::msb(e)); i >= 0; --i) {
        r = pmod(pmul(r, r), m);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i)))
            r = pmod(pmul(r, base), m);
    }
    return r;
}

bool is_irreducible(const Poly& f) {
    int d = f.degree();
    if (d < 1)
        throw DegreeTooSmall("irreducibility needs degree >= 1");
    Poly g = f;
    if (!g.is_monic()) {
        elem scale = f.field.inv(f.coeffs.back());
        for (elem& c : g.coeffs)
            c = f.field.mul(c, scale);
    }
    if (d == 1)
        return true;
    const bigint q = f.field.q();
    Poly x = poly_x(f.field);
    Poly h = pmod(x, g);
    auto primes = prime_factors(static_cast<unsigned>(d));
    for (int j = 1; j <= d; ++j) {
        h = ppowmod(h, q, g);
        if (j < d)
            for (unsigned p : primes)
                if (j == d / static_cast<int>(p) &&
                    pgcd(padd(h, x), g).degree() != 0)
                    return false;
    }
    return h == pmod(x, g);
}

bool is_irreducible_trial(const Poly& f) {
    int d = f.degree();
    if (d < 1)
        throw DegreeTooSmall("irreducibility needs degree >= 1");
    if (d == 1)
        return true;
    const Field& fld = f.field;
    const std::uint64_t q = fld.q();
    for (int dd = 1; dd <= d / 2; ++dd) {
        std::uint64_t count = checked_pow(q, static_cast<unsigned>(dd));
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<elem> c(dd + 1, 0);
            std::uint64_t v = idx;
            for (int i = 0; i < dd; ++i) {
                c[i] = static_cast<elem>(v % q);
                v /= q;
            }
            c[dd] = 1;
            if (pmod(f, Poly{fld, std::move(c)}).is_zero())
                return false;
        }
    }
    return true;
}

std::vector<Poly> enumerate_monic_irreducibles(
    const Field& f, unsigned n, std::optional<std::pair<elem, elem>> trace_subtrace,
    const Budget& budget, unsigned threads) {
    if (n < 1)
        throw DegreeTooSmall("enumeration needs degree >= 1");
    if (trace_subtrace) {
        if (n < 2)
            throw DegreeTooSmall("a trace/subtrace filter needs degree >= 2");
        if (trace_subtrace->first >= f.q() || trace_subtrace->second >= f.q())
            throw PreconditionViolated("filter element index not below q");
    }
    budget.check_poly(checked_pow(f.q(), n));
    std::vector<Poly> out;
    if (n == 1) {
        for (elem c = 0; c < f.q(); ++c)
            out.push_back(Poly{f, c == 0 ? std::vector<elem>{0, 1}
                                         : std::vector<elem>{c, 1}});
        return out;
    }
    auto [lo, hi] = scan_bounds(f, n, trace_subtrace);
    auto start = Budget::clock::now();
    auto chunks = run_chunked<std::vector<Poly>>(
        lo, hi, threads, [&](std::uint64_t a, std::uint64_t b, std::vector<Poly>& res) {
            scan_range(f, n, a, b, budget, start, [&](std::uint64_t, const elem* c) {
                std::vector<elem> coeffs(c, c + n);
                coeffs.push_back(1);
                res.push_back(Poly{f, std::move(coeffs)});
                return true;
            });
        });
    for (auto& chunk : chunks)
        for (auto& p : chunk)
            out.push_back(std::move(p));
    return out;
}

Poly first_monic_irreducible(const Field& f, unsigned n, const Budget& budget) {
    if (n < 1)
        throw DegreeTooSmall("enumeration needs degree >= 1");
    budget.check_poly(checked_pow(f.q(), n));
    if (n == 1)
        return poly_x(f);
    Poly found = poly_zero(f);
    scan_range(f, n, 0, checked_pow(f.q(), n), budget, Budget::clock::now(),
               [&](std::uint64_t, const elem* c) {
                   std::vector<elem> coeffs(c, c + n);
                   coeffs.push_back(1);
                   found = Poly{f, std::move(coeffs)};
                   return false;
               });
    if (found.is_zero())
        throw Error("no irreducible of degree " + std::to_string(n) + " found");
    return found;
}

std::vector<std::uint64_t> tally_monic_irreducibles(const Field& f, unsigned n,
                                                    const Budget& budget,
                                                    unsigned threads) {
    if (n < 2)
        throw DegreeTooSmall("trace/subtrace tally needs degree >= 2");
    budget.check_poly(checked_pow(f.q(), n));
    const std::uint64_t q = f.q();
    auto start = Budget::clock::now();
    auto chunks = run_chunked<std::vector<std::uint64_t>>(
        0, checked_pow(f.q(), n), threads,
        [&](std::uint64_t a, std::uint64_t b, std::vector<std::uint64_t>& res) {
            res.assign(q * q, 0);
            scan_range(f, n, a, b, budget, start, [&](std::uint64_t, const elem* c) {
                ++res[c[n - 1] * q + c[n - 2]];
                return true;
            });
        });
    std::vector<std::uint64_t> tally(q * q, 0);
    for (const auto& chunk : chunks)
        for (std::uint64_t i = 0; i < q * q; ++i)
            tally[i] += chunk[i];
    return tally;
}

elem trace_of(const Poly& f) {
    if (!f.is_monic())
        throw PreconditionViolated("trace is defined for monic polynomials");
    if (f.degree() < 1)
        throw DegreeTooSmall("trace needs degree >= 1");
    return f.coeffs[f.degree() - 1];
}

elem subtrace_of(const Poly& f) {
    if (!f.is_monic())
        throw PreconditionViolated("subtrace is defined for monic polynomials");
    if (f.degree() < 2)
        throw DegreeTooSmall("subtrace needs degree >= 2");
    return f.coeffs[f.degree() - 2];
}

std::string poly_to_string(const Poly& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        elem c = f.coeffs[i];
        if (c == 0)
            continue;
        if (!out.empty())
            out += "+";
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1)
                out += std::to_string(c) + "*";
            out += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return out;
}

std::string poly_to_index_list(const Poly& f) {
    std::string out = "[";
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(f.coeffs[i]);
    }
    return out + "]";
}

Poly poly_from_index_list(const Field& f, const std::string& text) {
    return poly_make(f, parse_index_list(f, text));
}

std::vector<elem> parse_index_list(const Field& f, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']')
            throw Error("unbalanced brackets in coefficient list");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<elem> coeffs;
    std::string cur;
    auto flush = [&] {
        if (cur.empty())
            throw Error("empty entry in coefficient list");
        coeffs.push_back(static_cast<elem>(std::stoul(cur)));
        cur.clear();
    };
    for (char ch : body) {
        if (ch == ' ')
            continue;
        if (ch == ',')
            flush();
        else if (ch >= '0' && ch <= '9')
            cur += ch;
        else
            throw Error(std::string("unexpected character '") + ch +
                        "' in coefficient list");
    }
    if (!cur.empty())
        flush();
    for (elem c : coeffs)
        if (c >= f.q())
            throw PreconditionViolated("entry " + std::to_string(c) +
                                       " is not below q = " + std::to_string(f.q()));
    return coeffs;
}

}  // namespace subtrace
