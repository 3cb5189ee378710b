#pragma once

#include "subtrace/counting.hpp"
#include "subtrace/extfield.hpp"

namespace subtrace {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;  // first failing witness, empty when passing
};

struct VerifyReport {
    std::vector<std::pair<std::uint32_t, unsigned>> grid;  // (q, n) pairs
    std::vector<CheckResult> checks;
    unsigned passed = 0;
    unsigned failed = 0;

    bool all_pass() const { return failed == 0; }
    nlohmann::ordered_json to_json() const;
};

// Exhaustive sweep of GF(q^n) tallying (trace, subtrace) per element. Runs on
// its own field tower (own modulus search and reduction tables) so agreement
// with the closed forms is evidence, not circularity. ext_modulus, when
// given, pins the tower's modulus.
CountTable oracle_F(const Field& f, unsigned n, const Budget& budget = {},
                    unsigned threads = 1,
                    const std::optional<Poly>& ext_modulus = std::nullopt);

// Exhaustive sweep of GF(q)^n tuples tallying coordinate sum and pairwise
// product sum.
CountTable oracle_Fstar(const Field& f, unsigned n, const Budget& budget = {});

// Tally of enumerated monic irreducibles by (trace, subtrace) coefficients.
CountTable oracle_P(const Field& f, unsigned n, const Budget& budget = {},
                    unsigned threads = 1);

// Runs every cross-check the budget admits for q = 2^1 .. 2^max_k: closed
// forms vs sweeps, sum identities, the subtrace lemma, self-dual normal
// basis identities, and the GF(2) Lyndon-word cross-check. Failures become
// report entries, not exceptions.
VerifyReport verify_grid(unsigned max_k = 4, const Budget& budget = {},
                         unsigned threads = 1);

}  // namespace subtrace
