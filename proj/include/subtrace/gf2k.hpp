#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "subtrace/errors.hpp"

namespace subtrace {

// A field element is its integer index: bit i is the coefficient of x^i in
// the polynomial basis. Callers keep values below q; the CLI validates user
// input before it reaches the library.
using elem = std::uint32_t;

struct LogTables {
    std::vector<std::uint16_t> log;  // log[a] for a in 1..q-1, base = a generator
    std::vector<std::uint16_t> exp;  // exp[i] for i in 0..2q-3, doubled to skip a mod
};

// GF(2^k) for 1 <= k <= 16, elements reduced modulo a fixed irreducible.
// Immutable after construction; cheap to copy and safe to share across threads.
class Field {
  public:
    // Default modulus: the lexicographically least irreducible of degree k.
    explicit Field(unsigned k);
    Field(unsigned k, std::uint32_t modulus);

    unsigned k() const { return k_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t modulus() const { return mod_; }

    elem add(elem a, elem b) const { return a ^ b; }
    elem mul(elem a, elem b) const {
        if (tables_) {
            if (a == 0 || b == 0)
                return 0;
            return tables_->exp[tables_->log[a] + tables_->log[b]];
        }
        return mul_ref(a, b);
    }
    elem inv(elem a) const;
    elem pow(elem a, std::uint64_t e) const;

    // Tr_{q:2}(a) = a + a^2 + ... + a^(2^(k-1)), always 0 or 1.
    unsigned trace_to_gf2(elem a) const;
    // chi(a) = (-1)^Tr_{q:2}(a).
    int canonical_character(elem a) const { return trace_to_gf2(a) == 0 ? 1 : -1; }
    // a^(q/2); the unique square root in characteristic 2.
    elem sqrt(elem a) const { return pow(a, q_ >> 1); }
    // v(s) = q-1 if s = 0, else -1.
    long long v_weight(elem s) const { return s == 0 ? (long long)q_ - 1 : -1; }

    std::vector<elem> elements() const;

    // Shift-and-xor reference multiply; the table path must match it bit for bit.
    elem mul_ref(elem a, elem b) const;
    bool has_log_tables() const { return tables_ != nullptr; }

    bool operator==(const Field& o) const { return k_ == o.k_ && mod_ == o.mod_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    static std::uint32_t default_modulus(unsigned k);
    // Irreducibility of a GF(2)[x] polynomial given as a bit vector.
    static bool is_irreducible_gf2(std::uint32_t poly, unsigned deg);

  private:
    unsigned k_;
    std::uint32_t q_;
    std::uint32_t mod_;
    std::shared_ptr<const LogTables> tables_;  // built for k <= 8 only
};

// Display form like "a^2+a+1" ("0" and "1" for the constants).
std::string elem_pretty(const Field& f, elem a);

}  // namespace subtrace
