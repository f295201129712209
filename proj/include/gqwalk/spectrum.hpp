#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gqwalk/polynomial.hpp"

namespace gqw {

constexpr int k_default_spectrum_cap = 14;

// Full cost table over the 2^n basis states plus the dense ranking of the
// distinct cost values (rank 0 = lowest). When a feasibility predicate is
// supplied, min/max/ranks are taken over the feasible states only and
// infeasible states carry rank -1.
struct Spectrum {
    int n = 0;
    std::vector<double> costs;
    std::vector<std::uint8_t> feasible_mask;  // empty means everything feasible
    std::vector<std::int32_t> rank_of;
    std::vector<double> rank_cost;  // rank -> representative cost, ascending
    double c_min = 0.0;
    double c_max = 0.0;
    std::uint64_t feasible_count = 0;

    bool is_feasible(basis_t j) const {
        return feasible_mask.empty() || feasible_mask[j] != 0;
    }
    int rank_count() const { return static_cast<int>(rank_cost.size()); }
    bool degenerate() const { return rank_count() <= 1; }
    std::size_t size() const { return costs.size(); }
};

Spectrum enumerate_spectrum(const Polynomial& p, int n_cap = k_default_spectrum_cap);
Spectrum enumerate_spectrum(const Polynomial& p,
                            const std::function<bool(basis_t)>& feasible,
                            int n_cap = k_default_spectrum_cap);

// Build directly from a cost table (used by tests and synthetic systems).
Spectrum spectrum_from_costs(int n, std::vector<double> costs,
                             const std::function<bool(basis_t)>& feasible = {});

}  // namespace gqw
