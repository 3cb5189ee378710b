// Acceptance gate: nine exact-equality criteria, one PASS/FAIL line each.
// Exit status 0 only when every criterion passes.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subtrace/cli.hpp"
#include "subtrace/oracle.hpp"

using namespace subtrace;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& witness) {
        if (pass) {
            pass = false;
            detail = witness;
        }
    }
};

bigint qpow_of(const Field& f, unsigned n) {
    bigint r = 1;
    for (unsigned i = 0; i < n; ++i)
        r *= f.q();
    return r;
}

std::uint64_t upow(std::uint64_t q, unsigned n) {
    std::uint64_t r = 1;
    while (n--)
        r *= q;
    return r;
}

std::string cell_tag(std::uint32_t q, unsigned n, elem t, elem s) {
    return "q=" + std::to_string(q) + " n=" + std::to_string(n) +
           " t=" + std::to_string(t) + " s=" + std::to_string(s);
}

// The flagship degree-3 grids over GF(4): 7 (elements) and 2 (polynomials)
// on the twisted diagonal s = t^2, 3 and 1 elsewhere.
Outcome criterion_element_grid() {
    Outcome o;
    Field f(2);
    CountTable sweep = oracle_F(f, 3);
    for (elem t = 0; t < 4; ++t)
        for (elem s = 0; s < 4; ++s) {
            bigint want = s == f.mul(t, t) ? 7 : 3;
            if (F_closed(f, 3, t, s) != want)
                o.fail("closed form " + cell_tag(4, 3, t, s) + " != " + want.str());
            if (sweep.at(t, s) != want)
                o.fail("sweep " + cell_tag(4, 3, t, s) + " != " + want.str());
        }
    std::ostringstream out, err;
    if (run_cli({"table", "F", "--q", "4", "--n", "3"}, out, err) != 0)
        o.fail("table F command failed");
    const std::string golden =
        "# q=4 k=2 modulus=7 kind=F n=3\n"
        "t\\s 0 1 2 3\n"
        "  0 7 3 3 3\n"
        "  1 3 7 3 3\n"
        "  2 3 3 3 7\n"
        "  3 3 3 7 3\n";
    if (out.str() != golden)
        o.fail("table F output drifted");
    return o;
}

Outcome criterion_polynomial_grid() {
    Outcome o;
    Field f(2);
    CountTable tally = oracle_P(f, 3);
    for (elem t = 0; t < 4; ++t)
        for (elem s = 0; s < 4; ++s) {
            bigint want = s == f.mul(t, t) ? 2 : 1;
            if (P_count(f, 3, t, s) != want)
                o.fail("inversion " + cell_tag(4, 3, t, s) + " != " + want.str());
            if (tally.at(t, s) != want)
                o.fail("enumeration " + cell_tag(4, 3, t, s) + " != " + want.str());
        }
    std::ostringstream out, err;
    if (run_cli({"table", "P", "--q", "4", "--n", "3"}, out, err) != 0)
        o.fail("table P command failed");
    const std::string golden =
        "# q=4 k=2 modulus=7 kind=P n=3\n"
        "t\\s 0 1 2 3\n"
        "  0 2 1 1 1\n"
        "  1 1 2 1 1\n"
        "  2 1 1 1 2\n"
        "  3 1 1 2 1\n";
    if (out.str() != golden)
        o.fail("table P output drifted");
    return o;
}

// corrupt_residue: when n % 4 matches, report 2q^(n-2) - F instead of F,
// which flips the sign of that branch's correction term. 4 means pristine.
bigint closed_form_maybe_corrupted(const Field& f, unsigned n, elem t, elem s,
                                   unsigned corrupt_residue) {
    bigint v = F_dispatch(f, n, t, s);
    if (n >= 2 && n % 4 == corrupt_residue)
        return 2 * qpow_of(f, n - 2) - v;
    return v;
}

Outcome compare_closed_form_to_sweep(std::uint64_t max_points, unsigned max_k,
                                     unsigned corrupt_residue) {
    Outcome o;
    Budget budget;
    budget.max_points = max_points;
    std::uint64_t cells = 0;
    for (unsigned k = 1; k <= max_k; ++k) {
        Field f(k);
        for (unsigned n = 2; upow(f.q(), n) <= max_points; ++n) {
            CountTable sweep = oracle_F(f, n, budget);
            for (elem t = 0; t < f.q(); ++t)
                for (elem s = 0; s < f.q(); ++s) {
                    ++cells;
                    bigint got =
                        closed_form_maybe_corrupted(f, n, t, s, corrupt_residue);
                    if (got != sweep.at(t, s))
                        o.fail(cell_tag(f.q(), n, t, s) + ": closed=" + got.str() +
                               " sweep=" + sweep.at(t, s).str());
                }
        }
    }
    if (o.pass)
        o.detail = std::to_string(cells) + " cells";
    return o;
}

Outcome criterion_closed_vs_sweep() {
    return compare_closed_form_to_sweep(std::uint64_t{1} << 20, 4, 4);
}

Outcome criterion_tuple_triple() {
    Outcome o;
    Budget budget;
    std::uint64_t cells = 0;
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        for (unsigned n = 2; upow(f.q(), n) <= (1u << 16); ++n) {
            CountTable sweep = oracle_Fstar(f, n, budget);
            for (elem t = 0; t < f.q(); ++t)
                for (elem s = 0; s < f.q(); ++s) {
                    ++cells;
                    bigint closed = Fstar_closed(f, n, t, s);
                    if (closed != Fstar_recursive(f, n, t, s))
                        o.fail(cell_tag(f.q(), n, t, s) + ": closed != recursion");
                    if (closed != sweep.at(t, s))
                        o.fail(cell_tag(f.q(), n, t, s) + ": closed=" + closed.str() +
                               " sweep=" + sweep.at(t, s).str());
                }
        }
    }
    if (o.pass)
        o.detail = std::to_string(cells) + " cells";
    return o;
}

Outcome criterion_inversion_vs_enumeration() {
    Outcome o;
    Budget budget;  // default max_poly is the criterion bound 2^22
    std::uint64_t cells = 0;
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        for (unsigned n = 2; upow(f.q(), n) <= budget.max_poly; ++n) {
            CountTable tally = oracle_P(f, n, budget);
            for (elem t = 0; t < f.q(); ++t)
                for (elem s = 0; s < f.q(); ++s) {
                    ++cells;
                    if (P_count(f, n, t, s) != tally.at(t, s))
                        o.fail(cell_tag(f.q(), n, t, s) + ": inversion=" +
                               P_count(f, n, t, s).str() +
                               " enumeration=" + tally.at(t, s).str());
                }
        }
    }
    if (o.pass)
        o.detail = std::to_string(cells) + " cells";
    return o;
}

Outcome criterion_gf2_lyndon() {
    Outcome o;
    Field f(1);
    for (unsigned n = 2; n <= 20; ++n) {
        bigint total = 0;
        for (unsigned t = 0; t <= 1; ++t)
            for (unsigned s = 0; s <= 1; ++s) {
                bigint p = P_count(f, n, t, s);
                total += p;
                if (p != lyndon_residue_count(n, t, s))
                    o.fail(cell_tag(2, n, t, s) + ": inversion=" + p.str() +
                           " residue sum=" + lyndon_residue_count(n, t, s).str());
            }
        if (total != classical_count(f, n))
            o.fail("n=" + std::to_string(n) + ": grid total " + total.str() +
                   " != classical " + classical_count(f, n).str());
    }
    return o;
}

Outcome criterion_lemma_suite() {
    Outcome o;
    // pair-sum form of the subtrace, exhaustive to 2^12 points
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        for (unsigned n = 2; upow(f.q(), n) <= (1u << 12); ++n) {
            ExtField E(f, n);
            for (std::uint64_t i = 0; i < upow(f.q(), n); ++i) {
                ExtElem a = E.from_index(bigint(i));
                if (E.subtrace(a) != E.subtrace_conjugate_form(a))
                    o.fail("q=" + std::to_string(f.q()) + " n=" + std::to_string(n) +
                           " beta=" + std::to_string(i) + ": pair sum differs");
            }
        }
    }
    // self-dual normal bases to 2^10 points: existence iff n % 4 != 0, and the
    // coordinate identities for every basis found
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        for (unsigned n = 2; upow(f.q(), n) <= (1u << 10); ++n) {
            ExtField E(f, n);
            const std::uint64_t count = upow(f.q(), n);
            std::vector<ExtElem> bases;
            for (std::uint64_t i = 0; i < count; ++i) {
                ExtElem theta = E.from_index(bigint(i));
                if (E.is_self_dual_normal(theta))
                    bases.push_back(theta);
            }
            std::string tag = "q=" + std::to_string(f.q()) + " n=" + std::to_string(n);
            if (bases.empty() == (n % 4 != 0)) {
                o.fail(tag + ": found " + std::to_string(bases.size()) +
                       " bases, existence expected iff n mod 4 != 0");
                continue;
            }
            for (const ExtElem& theta : bases) {
                elem eps = 0;
                if (n % 4 == 2) {
                    eps = E.epsilon_of_basis(theta);
                    if (f.trace_to_gf2(eps) != 1)
                        o.fail(tag + ": epsilon has absolute trace 0");
                }
                std::vector<ExtElem> conj{theta};
                for (unsigned i = 1; i < n; ++i)
                    conj.push_back(E.frobenius(conj.back()));
                for (std::uint64_t idx = 0; idx < count; ++idx) {
                    ExtElem beta = E.from_index(bigint(idx));
                    elem csum = 0, cpair = 0, pre = 0;
                    for (unsigned i = 0; i < n; ++i) {
                        elem ai = E.trace(E.emul(beta, conj[i]));
                        cpair = f.add(cpair, f.mul(ai, pre));
                        pre = f.add(pre, ai);
                        csum = f.add(csum, ai);
                    }
                    if (E.trace(beta) != csum)
                        o.fail(tag + " beta=" + std::to_string(idx) +
                               ": coordinate sum misses the trace");
                    if (n % 2 == 1 && E.subtrace(beta) != cpair)
                        o.fail(tag + " beta=" + std::to_string(idx) +
                               ": coordinate pair sum misses the subtrace");
                    if (n % 4 == 2 &&
                        E.subtrace(beta) !=
                            f.add(cpair, f.mul(eps, f.mul(csum, csum))))
                        o.fail(tag + " beta=" + std::to_string(idx) +
                               ": epsilon correction misses the subtrace");
                }
            }
        }
    }
    return o;
}

Outcome criterion_identities() {
    Outcome o;
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        for (unsigned n = 2; n <= 12; ++n) {
            bigint total = 0;
            for (elem t = 0; t < f.q(); ++t)
                for (elem s = 0; s < f.q(); ++s)
                    total += F_closed(f, n, t, s);
            if (total != qpow_of(f, n))
                o.fail("sum of F over q=" + std::to_string(f.q()) +
                       " n=" + std::to_string(n) + " is " + total.str());
            if (n % 2 == 1)
                for (elem t = 0; t < f.q(); ++t)
                    for (elem s = 0; s < f.q(); ++s)
                        if (F_closed(f, n, t, s) != Fstar_closed(f, n, t, s))
                            o.fail("odd-degree mismatch at " +
                                   cell_tag(f.q(), n, t, s));
        }
        for (unsigned n = 2; n <= 6; ++n)
            for (elem c = 1; c < f.q(); ++c)
                for (elem t = 0; t < f.q(); ++t)
                    for (elem s = 0; s < f.q(); ++s)
                        if (P_count(f, n, f.mul(c, t), f.mul(f.mul(c, c), s)) !=
                            P_count(f, n, t, s))
                            o.fail("scaling c=" + std::to_string(c) + " breaks " +
                                   cell_tag(f.q(), n, t, s));
        // the exact-division and nonnegativity assertions must never fire
        for (unsigned n = 2; n <= 24; ++n) {
            try {
                classical_count(f, n);
                classical_count_trace_nonzero(f, n);
                for (elem t = 0; t < f.q(); ++t)
                    for (elem s = 0; s < f.q(); ++s)
                        P_count(f, n, t, s);
            } catch (const Error& e) {
                o.fail("q=" + std::to_string(f.q()) + " n=" + std::to_string(n) +
                       " raised: " + e.what());
            }
        }
    }
    return o;
}

Outcome criterion_mutation_sensitivity() {
    Outcome o;
    std::string seen;
    for (unsigned residue : {1u, 2u, 3u, 0u}) {
        // corrupting one branch must break the sweep comparison somewhere
        Outcome run = compare_closed_form_to_sweep(64, 1, residue);
        if (run.pass) {
            o.fail("sign flip in the n % 4 = " + std::to_string(residue) +
                   " branch went undetected");
            continue;
        }
        seen += "n%4=" + std::to_string(residue) + " caught at [" + run.detail +
                "]; ";
    }
    Outcome pristine = compare_closed_form_to_sweep(64, 1, 4);
    if (!pristine.pass)
        o.fail("pristine comparison failed: " + pristine.detail);
    if (o.pass)
        o.detail = seen;
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
        bool timed;  // must finish under one second
    };
    const Criterion criteria[] = {
        {"1 GF(4) cubic element grid via closed form, sweep, and CLI",
         criterion_element_grid, true},
        {"2 GF(4) cubic polynomial grid via inversion, enumeration, and CLI",
         criterion_polynomial_grid, true},
        {"3 closed form equals element sweep for q^n <= 2^20",
         criterion_closed_vs_sweep, false},
        {"4 tuple closed form, recursion, and sweep agree for q^n <= 2^16",
         criterion_tuple_triple, false},
        {"5 inversion equals enumeration tally for q^n <= 2^22",
         criterion_inversion_vs_enumeration, false},
        {"6 GF(2) Lyndon residue sums match for n = 2..20",
         criterion_gf2_lyndon, false},
        {"7 subtrace pair-sum lemma and self-dual basis identities",
         criterion_lemma_suite, false},
        {"8 grid sums, scaling symmetry, odd-degree equality, exact divisions",
         criterion_identities, false},
        {"9 a sign flip in any one closed-form branch is detected",
         criterion_mutation_sensitivity, false},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("unexpected exception: ") + e.what();
        }
        std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        if (c.timed && elapsed.count() >= 1.0) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ");
            o.detail += "took " + std::to_string(elapsed.count()) + " s, limit 1 s";
        }
        failures += o.pass ? 0 : 1;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.name << " ["
             << elapsed.count() << "s]";
        std::cout << line.str() << "\n";
        if (!o.pass)
            std::cout << "     witness: " << o.detail << "\n";
    }
    std::cout << (failures == 0 ? "acceptance: all 9 criteria hold"
                                : "acceptance: " + std::to_string(failures) +
                                      " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
