#include "subtrace/oracle.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace subtrace {

namespace {

std::uint64_t checked_pow(std::uint64_t q, unsigned n) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / q)
            return std::numeric_limits<std::uint64_t>::max();
        r *= q;
    }
    return r;
}

// ---- self-contained modulus machinery (kept independent of the polynomial
// ring module on purpose: the sweep must not share its arithmetic)

// remainder test: does monic e (degree dd) divide monic c (degree n)?
bool divides_dense(const Field& f, const elem* c, unsigned n, const elem* e,
                   unsigned dd) {
    std::vector<elem> r(c, c + n);
    r.push_back(1);
    for (unsigned d = n; d >= dd; --d) {
        elem top = r[d];
        if (top) {
            r[d] = 0;
            for (unsigned i = 0; i < dd; ++i)
                r[d - dd + i] ^= f.mul(top, e[i]);
        }
    }
    for (unsigned i = 0; i < dd; ++i)
        if (r[i])
            return false;
    return true;
}

bool irreducible_by_trial(const Field& f, const std::vector<elem>& c, unsigned n) {
    if (n == 1)
        return true;
    std::vector<elem> e;
    for (unsigned dd = 1; dd <= n / 2; ++dd) {
        std::uint64_t count = checked_pow(f.q(), dd);
        e.assign(dd, 0);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (divides_dense(f, c.data(), n, e.data(), dd))
                return false;
            for (unsigned i = 0; i < dd; ++i) {
                if (++e[i] < f.q())
                    break;
                e[i] = 0;
            }
        }
    }
    return true;
}

// least monic irreducible of degree n, coefficients by ascending index
std::vector<elem> find_modulus(const Field& f, unsigned n) {
    std::vector<elem> c(n, 0);
    std::uint64_t total = checked_pow(f.q(), n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (irreducible_by_trial(f, c, n))
            return c;
        for (unsigned i = 0; i < n; ++i) {
            if (++c[i] < f.q())
                break;
            c[i] = 0;
        }
    }
    throw Error("no irreducible modulus of degree " + std::to_string(n));
}

// ---- packed GF(2) tower sweep

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

std::uint64_t clmul32(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    while (a) {
        unsigned i = static_cast<unsigned>(__builtin_ctz(a));
        r ^= static_cast<std::uint64_t>(b) << i;
        a &= a - 1;
    }
    return r;
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

std::uint64_t square_bits(std::uint32_t v) {
    const auto& t = spread_table();
    return static_cast<std::uint64_t>(t[v & 0xFF]) |
           static_cast<std::uint64_t>(t[(v >> 8) & 0xFF]) << 16 |
           static_cast<std::uint64_t>(t[(v >> 16) & 0xFF]) << 32 |
           static_cast<std::uint64_t>(t[(v >> 24) & 0xFF]) << 48;
}

void sweep_gf2(std::uint32_t mod_bits, unsigned n, std::uint64_t lo,
               std::uint64_t hi, const Budget& budget,
               Budget::clock::time_point start, std::vector<std::uint64_t>& tally) {
    for (std::uint64_t b = lo; b < hi; ++b) {
        if ((b & 0xFFFF) == 0)
            budget.check_time(start);
        std::uint32_t conj = static_cast<std::uint32_t>(b);
        std::uint32_t t = conj;
        std::uint32_t prefix = conj;
        std::uint32_t s = 0;
        for (unsigned j = 1; j < n; ++j) {
            conj = static_cast<std::uint32_t>(polymod64(square_bits(conj), mod_bits));
            t ^= conj;
            s ^= static_cast<std::uint32_t>(polymod64(clmul32(conj, prefix), mod_bits));
            prefix ^= conj;
        }
        if (t > 1 || s > 1)
            throw Error("trace or subtrace fell outside the base field");
        ++tally[t * 2 + s];
    }
}

// ---- dense tower sweep for k > 1

struct DenseTower {
    const Field& f;
    unsigned n;
    std::vector<elem> mod;   // low n coefficients, monic implicit
    std::vector<elem> red;   // row i: x^(n+i) reduced
    std::vector<elem> frob;  // row i: (x^i)^q reduced
    std::vector<elem> tvec;  // trace of x^i

    DenseTower(const Field& fld, unsigned deg, std::vector<elem> modulus)
        : f(fld), n(deg), mod(std::move(modulus)) {
        red.assign(static_cast<size_t>(n) * n, 0);
        for (unsigned j = 0; j < n; ++j)
            red[j] = mod[j];
        for (unsigned i = 1; i < n; ++i) {
            const elem* prev = &red[(i - 1) * n];
            elem* row = &red[i * n];
            elem top = prev[n - 1];
            row[0] = f.mul(top, mod[0]);
            for (unsigned j = 1; j < n; ++j)
                row[j] = prev[j - 1] ^ f.mul(top, mod[j]);
        }
        // x^q by repeated squaring of x, then (x^i)^q by products with it
        std::vector<elem> xq(n, 0), tmp(n, 0);
        if (n == 1) {
            xq[0] = mod[0];  // unused
        } else {
            xq[1] = 1;
            for (unsigned rep = 0; rep < f.k(); ++rep) {
                square(xq.data(), tmp.data());
                xq = tmp;
            }
        }
        frob.assign(static_cast<size_t>(n) * n, 0);
        frob[0] = 1;
        std::vector<elem> row(n, 0), out(n, 0);
        row[0] = 1;
        for (unsigned i = 1; i < n; ++i) {
            mul(row.data(), xq.data(), out.data());
            row = out;
            std::copy(row.begin(), row.end(), frob.begin() + i * n);
        }
        tvec.assign(n, 0);
        std::vector<elem> h(n, 0), acc(n, 0), h2(n, 0);
        for (unsigned i = 0; i < n; ++i) {
            std::fill(h.begin(), h.end(), 0);
            h[i] = 1;
            std::fill(acc.begin(), acc.end(), 0);
            for (unsigned j = 0; j < n; ++j) {
                for (unsigned x = 0; x < n; ++x)
                    acc[x] ^= h[x];
                apply_frob(h.data(), h2.data());
                h = h2;
            }
            for (unsigned x = 1; x < n; ++x)
                if (acc[x])
                    throw Error("basis trace fell outside the base field");
            tvec[i] = acc[0];
        }
    }

    void reduce(elem* buf) const {  // buf has 2n-1 slots
        for (unsigned d = 2 * n - 2; d >= n && d > 0; --d) {
            elem top = buf[d];
            if (top) {
                const elem* row = &red[(d - n) * n];
                for (unsigned i = 0; i < n; ++i)
                    if (row[i])
                        buf[i] ^= f.mul(top, row[i]);
            }
        }
    }

    void mul(const elem* a, const elem* b, elem* out) const {
        std::vector<elem> buf(2 * n - 1, 0);
        for (unsigned i = 0; i < n; ++i)
            if (a[i])
                for (unsigned j = 0; j < n; ++j)
                    buf[i + j] ^= f.mul(a[i], b[j]);
        reduce(buf.data());
        std::copy(buf.begin(), buf.begin() + n, out);
    }

    void square(const elem* a, elem* out) const {
        std::vector<elem> buf(2 * n - 1, 0);
        for (unsigned i = 0; i < n; ++i)
            if (a[i])
                buf[2 * i] = f.mul(a[i], a[i]);
        reduce(buf.data());
        std::copy(buf.begin(), buf.begin() + n, out);
    }

    void apply_frob(const elem* a, elem* out) const {
        std::fill(out, out + n, 0);
        for (unsigned i = 0; i < n; ++i)
            if (a[i]) {
                const elem* row = &frob[i * n];
                for (unsigned j = 0; j < n; ++j)
                    if (row[j])
                        out[j] ^= f.mul(a[i], row[j]);
            }
    }
};

void sweep_dense(const DenseTower& tower, std::uint64_t lo, std::uint64_t hi,
                 const Budget& budget, Budget::clock::time_point start,
                 std::vector<std::uint64_t>& tally) {
    const Field& f = tower.f;
    const unsigned n = tower.n;
    const std::uint32_t q = f.q();
    std::vector<elem> b(n, 0), conj(n), next(n), prefix(n), sacc(n), prod(2 * n - 1);
    std::uint64_t v = lo;
    for (unsigned i = 0; i < n; ++i) {
        b[i] = static_cast<elem>(v % q);
        v /= q;
    }
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if ((idx & 0xFFF) == 0)
            budget.check_time(start);
        elem t = 0;
        for (unsigned i = 0; i < n; ++i)
            if (b[i])
                t ^= f.mul(b[i], tower.tvec[i]);
        conj = b;
        prefix = b;
        std::fill(sacc.begin(), sacc.end(), 0);
        for (unsigned j = 1; j < n; ++j) {
            tower.apply_frob(conj.data(), next.data());
            conj.swap(next);
            std::fill(prod.begin(), prod.end(), 0);
            for (unsigned x = 0; x < n; ++x)
                if (conj[x])
                    for (unsigned y = 0; y < n; ++y)
                        prod[x + y] ^= f.mul(conj[x], prefix[y]);
            tower.reduce(prod.data());
            for (unsigned x = 0; x < n; ++x) {
                sacc[x] ^= prod[x];
                prefix[x] ^= conj[x];
            }
        }
        for (unsigned x = 1; x < n; ++x)
            if (sacc[x])
                throw Error("subtrace fell outside the base field");
        ++tally[static_cast<std::uint64_t>(t) * q + sacc[0]];
        for (unsigned i = 0; i < n; ++i) {
            if (++b[i] < q)
                break;
            b[i] = 0;
        }
    }
}

template <class Work>
std::vector<std::vector<std::uint64_t>> run_tally_chunks(std::uint64_t total,
                                                         unsigned threads,
                                                         size_t tally_size,
                                                         Work&& work) {
    unsigned t = std::max(1u, threads);
    t = static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(total, 1)));
    std::vector<std::vector<std::uint64_t>> tallies(t);
    for (auto& tl : tallies)
        tl.assign(tally_size, 0);
    if (t == 1) {
        work(0, total, tallies[0]);
        return tallies;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (unsigned i = 0; i < t; ++i) {
        std::uint64_t a = total * i / t;
        std::uint64_t b = total * (i + 1) / t;
        pool.emplace_back([&, i, a, b] {
            try {
                work(a, b, tallies[i]);
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
    return tallies;
}

}  // namespace

CountTable oracle_F(const Field& f, unsigned n, const Budget& budget,
                    unsigned threads, const std::optional<Poly>& ext_modulus) {
    if (n < 1)
        throw DegreeTooSmall("element sweep needs degree >= 1");
    std::uint64_t total = checked_pow(f.q(), n);
    budget.check_points(total);
    std::vector<elem> mod;
    if (ext_modulus) {
        if (ext_modulus->field != f)
            throw ParamsMismatch("sweep modulus is over a different base field");
        if (ext_modulus->degree() != static_cast<int>(n) || !ext_modulus->is_monic())
            throw PreconditionViolated("sweep modulus must be monic of degree " +
                                       std::to_string(n));
        mod.assign(ext_modulus->coeffs.begin(), ext_modulus->coeffs.end() - 1);
        if (!irreducible_by_trial(f, mod, n))
            throw ReducibleModulus("sweep modulus is reducible");
    } else {
        mod = find_modulus(f, n);
    }
    auto start = Budget::clock::now();
    const size_t tsize = static_cast<size_t>(f.q()) * f.q();
    std::vector<std::vector<std::uint64_t>> tallies;
    if (f.k() == 1) {
        std::uint32_t bits = 1u << n;
        for (unsigned i = 0; i < n; ++i)
            if (mod[i])
                bits |= 1u << i;
        tallies = run_tally_chunks(total, threads, tsize,
                                   [&](std::uint64_t a, std::uint64_t b,
                                       std::vector<std::uint64_t>& tl) {
                                       sweep_gf2(bits, n, a, b, budget, start, tl);
                                   });
    } else {
        DenseTower tower(f, n, mod);
        tallies = run_tally_chunks(total, threads, tsize,
                                   [&](std::uint64_t a, std::uint64_t b,
                                       std::vector<std::uint64_t>& tl) {
                                       sweep_dense(tower, a, b, budget, start, tl);
                                   });
    }
    CountTable table{f, n, Kind::F, std::vector<bigint>(tsize)};
    for (const auto& tl : tallies)
        for (size_t i = 0; i < tsize; ++i)
            table.entries[i] += tl[i];
    return table;
}

CountTable oracle_Fstar(const Field& f, unsigned n, const Budget& budget) {
    if (n < 1)
        throw DegreeTooSmall("tuple sweep needs degree >= 1");
    std::uint64_t total = checked_pow(f.q(), n);
    budget.check_points(total);
    auto start = Budget::clock::now();
    const std::uint32_t q = f.q();
    const size_t tsize = static_cast<size_t>(q) * q;
    std::vector<std::uint64_t> tally(tsize, 0);
    std::vector<elem> a(n, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if ((idx & 0xFFFF) == 0)
            budget.check_time(start);
        elem e1 = 0, e2 = 0, pre = 0;
        for (unsigned i = 0; i < n; ++i) {
            e2 ^= f.mul(a[i], pre);
            pre ^= a[i];
            e1 ^= a[i];
        }
        ++tally[static_cast<std::uint64_t>(e1) * q + e2];
        for (unsigned i = 0; i < n; ++i) {
            if (++a[i] < q)
                break;
            a[i] = 0;
        }
    }
    CountTable table{f, n, Kind::Fstar, std::vector<bigint>(tsize)};
    for (size_t i = 0; i < tsize; ++i)
        table.entries[i] = tally[i];
    return table;
}

CountTable oracle_P(const Field& f, unsigned n, const Budget& budget,
                    unsigned threads) {
    if (n < 2)
        throw DegreeTooSmall("irreducible tally needs degree >= 2");
    std::vector<std::uint64_t> tally = tally_monic_irreducibles(f, n, budget, threads);
    CountTable table{f, n, Kind::P, std::vector<bigint>(tally.size())};
    for (size_t i = 0; i < tally.size(); ++i)
        table.entries[i] = tally[i];
    return table;
}

namespace {

void add_check(VerifyReport& report, std::string name,
               std::optional<std::string> witness) {
    CheckResult r{std::move(name), !witness.has_value(),
                  witness.value_or("")};
    if (r.pass)
        ++report.passed;
    else
        ++report.failed;
    report.checks.push_back(std::move(r));
}

std::string ts_witness(elem t, elem s, const bigint& want, const bigint& got) {
    return "t=" + std::to_string(t) + " s=" + std::to_string(s) +
           " expected=" + want.str() + " got=" + got.str();
}

template <class WantFn>
std::optional<std::string> table_mismatch(const Field& f, const CountTable& got,
                                          WantFn&& want) {
    for (elem t = 0; t < f.q(); ++t)
        for (elem s = 0; s < f.q(); ++s) {
            bigint w = want(t, s);
            if (got.at(t, s) != w)
                return ts_witness(t, s, w, got.at(t, s));
        }
    return std::nullopt;
}

std::string qn_tag(std::uint32_t q, unsigned n) {
    return "[q=" + std::to_string(q) + ",n=" + std::to_string(n) + "]";
}

}  // namespace

nlohmann::ordered_json VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json g = nlohmann::ordered_json::array();
    for (auto [q, n] : grid) {
        nlohmann::ordered_json e;
        e["q"] = q;
        e["n"] = n;
        g.push_back(std::move(e));
    }
    j["grid"] = std::move(g);
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["detail"] = c.detail;
        cs.push_back(std::move(e));
    }
    j["checks"] = std::move(cs);
    j["passed"] = passed;
    j["failed"] = failed;
    return j;
}

VerifyReport verify_grid(unsigned max_k, const Budget& budget, unsigned threads) {
    VerifyReport report;
    for (unsigned k = 1; k <= max_k && k <= 16; ++k) {
        Field f(k);
        const std::uint32_t q = f.q();
        unsigned hi_points = 1;
        while (checked_pow(q, hi_points + 1) <= budget.max_points)
            ++hi_points;
        unsigned hi_poly = 1;
        while (checked_pow(q, hi_poly + 1) <= budget.max_poly)
            ++hi_poly;
        for (unsigned n = 2; n <= std::max(hi_points, hi_poly); ++n)
            report.grid.emplace_back(q, n);

        for (unsigned n = 2; n <= hi_points; ++n) {
            CountTable swept = oracle_F(f, n, budget, threads);
            add_check(report, "F" + qn_tag(q, n) + " closed form vs element sweep",
                      table_mismatch(f, swept, [&](elem t, elem s) {
                          return F_dispatch(f, n, t, s);
                      }));
            bigint sum = 0;
            for (elem t = 0; t < q; ++t)
                for (elem s = 0; s < q; ++s)
                    sum += F_dispatch(f, n, t, s);
            bigint want_total = boost::multiprecision::pow(bigint(q), n);
            add_check(report, "F" + qn_tag(q, n) + " total = q^n",
                      sum == want_total
                          ? std::nullopt
                          : std::make_optional("expected=" + want_total.str() +
                                               " got=" + sum.str()));
            if (n % 2 == 1) {
                std::optional<std::string> w;
                for (elem t = 0; t < q && !w; ++t)
                    for (elem s = 0; s < q && !w; ++s) {
                        bigint a = F_closed(f, n, t, s);
                        bigint b = Fstar_closed(f, n, t, s);
                        if (a != b)
                            w = ts_witness(t, s, a, b);
                    }
                add_check(report, "F" + qn_tag(q, n) + " odd degree equals Fstar",
                          std::move(w));
            }
            CountTable tuples = oracle_Fstar(f, n, budget);
            add_check(report,
                      "Fstar" + qn_tag(q, n) + " closed form vs tuple sweep",
                      table_mismatch(f, tuples, [&](elem t, elem s) {
                          return Fstar_closed(f, n, t, s);
                      }));
            std::optional<std::string> wrec;
            for (elem t = 0; t < q && !wrec; ++t)
                for (elem s = 0; s < q && !wrec; ++s) {
                    bigint a = Fstar_closed(f, n, t, s);
                    bigint b = Fstar_recursive(f, n, t, s);
                    if (a != b)
                        wrec = ts_witness(t, s, a, b);
                }
            add_check(report, "Fstar" + qn_tag(q, n) + " closed form vs recursion",
                      std::move(wrec));
        }

        for (unsigned n = 2; n <= hi_poly; ++n) {
            CountTable counted = oracle_P(f, n, budget, threads);
            add_check(report,
                      "P" + qn_tag(q, n) + " inversion vs enumeration",
                      table_mismatch(f, counted, [&](elem t, elem s) {
                          return P_count(f, n, t, s);
                      }));
            bigint total = counted.total();
            bigint classical = classical_count(f, n);
            add_check(report, "P" + qn_tag(q, n) + " total = classical count",
                      total == classical
                          ? std::nullopt
                          : std::make_optional("expected=" + classical.str() +
                                               " got=" + total.str()));
            bigint row_want = classical_count_trace_nonzero(f, n);
            std::optional<std::string> wrow;
            for (elem t = 1; t < q && !wrow; ++t) {
                bigint row = 0;
                for (elem s = 0; s < q; ++s)
                    row += P_count(f, n, t, s);
                if (row != row_want)
                    wrow = "t=" + std::to_string(t) + " expected=" +
                           row_want.str() + " got=" + row.str();
            }
            add_check(report,
                      "P" + qn_tag(q, n) + " row totals at nonzero trace",
                      std::move(wrow));
            std::optional<std::string> wscale;
            for (elem c = 1; c < q && !wscale; ++c)
                for (elem t = 0; t < q && !wscale; ++t)
                    for (elem s = 0; s < q && !wscale; ++s) {
                        bigint a = P_count(f, n, t, s);
                        bigint b = P_count(f, n, f.mul(c, t),
                                           f.mul(f.mul(c, c), s));
                        if (a != b)
                            wscale = "c=" + std::to_string(c) + " " +
                                     ts_witness(t, s, a, b);
                    }
            add_check(report, "P" + qn_tag(q, n) + " scaling symmetry",
                      std::move(wscale));
        }

        for (unsigned n = 2;
             checked_pow(q, n) <= std::min<std::uint64_t>(budget.max_points, 4096);
             ++n) {
            ExtField E(f, n);
            std::uint64_t count = checked_pow(q, n);
            std::optional<std::string> w;
            for (std::uint64_t idx = 0; idx < count && !w; ++idx) {
                ExtElem beta = E.from_index(idx);
                elem a = E.subtrace(beta);
                elem b = E.subtrace_conjugate_form(beta);
                if (a != b)
                    w = "beta=" + std::to_string(idx) + " expected=" +
                        std::to_string(a) + " got=" + std::to_string(b);
            }
            add_check(report,
                      "subtrace" + qn_tag(q, n) + " pair sum vs conjugate form",
                      std::move(w));
        }

        for (unsigned n = 2;
             checked_pow(q, n) <= std::min<std::uint64_t>(budget.max_points, 1024);
             ++n) {
            ExtField E(f, n);
            std::uint64_t count = checked_pow(q, n);
            std::vector<ExtElem> bases;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                ExtElem theta = E.from_index(idx);
                if (E.is_self_dual_normal(theta))
                    bases.push_back(std::move(theta));
            }
            bool want_exists = n % 4 != 0;
            add_check(report,
                      "basis" + qn_tag(q, n) + " self-dual normal exists iff "
                      "n mod 4 != 0",
                      bases.empty() != want_exists
                          ? std::nullopt
                          : std::make_optional(std::string("found ") +
                                               std::to_string(bases.size()) +
                                               ", existence expected: " +
                                               (want_exists ? "yes" : "no")));
            if (bases.empty())
                continue;
            std::optional<std::string> w;
            for (const ExtElem& theta : bases) {
                std::string tag = "theta=" + E.to_index(theta).str() + " ";
                elem eps = 0;
                if (n % 4 == 2) {
                    eps = E.epsilon_of_basis(theta);
                    if (f.trace_to_gf2(eps) != 1) {
                        w = tag + "absolute trace of epsilon is 0";
                        break;
                    }
                }
                // conjugates of theta, for the coordinate inner products
                std::vector<ExtElem> conj{theta};
                for (unsigned i = 1; i < n; ++i)
                    conj.push_back(E.frobenius(conj.back()));
                for (std::uint64_t idx = 0; idx < count && !w; ++idx) {
                    ExtElem beta = E.from_index(idx);
                    std::vector<elem> coords(n);
                    for (unsigned i = 0; i < n; ++i)
                        coords[i] = E.trace(E.emul(beta, conj[i]));
                    elem csum = 0, cpair = 0, pre = 0;
                    for (unsigned i = 0; i < n; ++i) {
                        cpair ^= f.mul(coords[i], pre);
                        pre ^= coords[i];
                        csum ^= coords[i];
                    }
                    if (E.trace(beta) != csum) {
                        w = tag + "beta=" + std::to_string(idx) +
                            " coordinate sum misses the trace";
                        break;
                    }
                    elem want_sub;
                    if (n % 2 == 1)
                        want_sub = cpair;
                    else if (n % 4 == 2)
                        want_sub = cpair ^ f.mul(eps, f.mul(csum, csum));
                    else
                        continue;
                    if (E.subtrace(beta) != want_sub) {
                        w = tag + "beta=" + std::to_string(idx) +
                            " coordinate pair sum misses the subtrace";
                        break;
                    }
                }
                if (w)
                    break;
            }
            add_check(report,
                      "basis" + qn_tag(q, n) + " coordinate trace/subtrace "
                      "identities",
                      std::move(w));
        }

        if (k == 1) {
            for (unsigned n = 2; n <= 20; ++n) {
                std::optional<std::string> w;
                for (elem t = 0; t < 2 && !w; ++t)
                    for (elem s = 0; s < 2 && !w; ++s) {
                        bigint a = lyndon_residue_count(n, t, s);
                        bigint b = P_count(f, n, t, s);
                        if (a != b)
                            w = ts_witness(t, s, a, b);
                    }
                if (!w) {
                    bigint total = 0;
                    for (elem t = 0; t < 2; ++t)
                        for (elem s = 0; s < 2; ++s)
                            total += P_count(f, n, t, s);
                    bigint classical = classical_count(f, n);
                    if (total != classical)
                        w = "total expected=" + classical.str() + " got=" +
                            total.str();
                }
                add_check(report,
                          "lyndon[n=" + std::to_string(n) +
                          "] residue sums vs inversion",
                          std::move(w));
            }
        }
    }
    return report;
}

}  // namespace subtrace
