#include "gqwalk/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gqw {

namespace {

void build_rankings(Spectrum& s) {
    std::vector<std::uint32_t> order;
    order.reserve(s.size());
    for (basis_t j = 0; j < s.size(); ++j)
        if (s.is_feasible(j)) order.push_back(static_cast<std::uint32_t>(j));
    if (order.empty()) throw std::invalid_argument("spectrum has no feasible state");
    s.feasible_count = order.size();
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return s.costs[a] < s.costs[b];
    });

    s.rank_of.assign(s.size(), -1);
    s.rank_cost.clear();
    // Group against the representative (first member), not the neighbour, so
    // long chains of nearly equal values cannot drift across the tolerance.
    for (std::uint32_t j : order) {
        if (s.rank_cost.empty() || values_distinct(s.rank_cost.back(), s.costs[j]))
            s.rank_cost.push_back(s.costs[j]);
        s.rank_of[j] = static_cast<std::int32_t>(s.rank_cost.size()) - 1;
    }
    s.c_min = s.costs[order.front()];
    s.c_max = s.costs[order.back()];
}

}  // namespace

Spectrum spectrum_from_costs(int n, std::vector<double> costs,
                             const std::function<bool(basis_t)>& feasible) {
    if (n < 1 || n > k_max_vars) throw std::invalid_argument("bad spectrum dimension");
    if (costs.size() != (std::size_t{1} << n))
        throw std::invalid_argument("cost table size must be 2^n");
    Spectrum s;
    s.n = n;
    s.costs = std::move(costs);
    if (feasible) {
        s.feasible_mask.resize(s.costs.size());
        for (basis_t j = 0; j < s.costs.size(); ++j)
            s.feasible_mask[j] = feasible(j) ? 1 : 0;
    }
    build_rankings(s);
    return s;
}

Spectrum enumerate_spectrum(const Polynomial& p, int n_cap) {
    return enumerate_spectrum(p, std::function<bool(basis_t)>{}, n_cap);
}

Spectrum enumerate_spectrum(const Polynomial& p,
                            const std::function<bool(basis_t)>& feasible,
                            int n_cap) {
    if (p.n > n_cap)
        throw std::invalid_argument("enumerate_spectrum: n=" + std::to_string(p.n) +
                                    " exceeds cap " + std::to_string(n_cap));
    std::size_t size = std::size_t{1} << p.n;
    std::vector<double> costs(size);
    for (basis_t j = 0; j < size; ++j) costs[j] = evaluate(p, j);
    return spectrum_from_costs(p.n, std::move(costs), feasible);
}

}  // namespace gqw
