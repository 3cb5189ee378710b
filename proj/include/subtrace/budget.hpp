#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "subtrace/errors.hpp"

namespace subtrace {

// Caps on exhaustive work. Sweeps refuse up front when q^n exceeds the
// relevant cap; time_cap is checked between work chunks once a sweep runs.
struct Budget {
    std::uint64_t max_points = std::uint64_t{1} << 20;  // element / tuple sweeps
    std::uint64_t max_poly = std::uint64_t{1} << 22;    // irreducible enumeration
    std::optional<double> time_cap;                     // seconds of wall clock

    using clock = std::chrono::steady_clock;

    void check_points(std::uint64_t points) const {
        if (points > max_points)
            throw BudgetExceeded("sweep size " + std::to_string(points) +
                                 " exceeds max_points " + std::to_string(max_points));
    }

    void check_poly(std::uint64_t points) const {
        if (points > max_poly)
            throw BudgetExceeded("enumeration size " + std::to_string(points) +
                                 " exceeds max_poly " + std::to_string(max_poly));
    }

    void check_time(clock::time_point start) const {
        if (!time_cap)
            return;
        std::chrono::duration<double> elapsed = clock::now() - start;
        if (elapsed.count() > *time_cap)
            throw BudgetExceeded("time cap of " + std::to_string(*time_cap) +
                                 " s exceeded");
    }
};

}  // namespace subtrace
