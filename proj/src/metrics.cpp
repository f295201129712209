#include "gqwalk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gqw {

namespace {

void check(const StateVector& s, const Spectrum& spec) {
    if (s.size() != spec.size()) throw std::invalid_argument("state/spectrum size mismatch");
}

}  // namespace

double quality_expectation(const StateVector& s, const Spectrum& spec) {
    check(s, spec);
    if (spec.degenerate()) {
        double mass = 0.0;
        for (basis_t j = 0; j < s.size(); ++j)
            if (spec.rank_of[j] >= 0) mass += std::norm(s.amp[j]);
        return mass;
    }
    double span = spec.c_max - spec.c_min;
    double total = 0.0;
    for (basis_t j = 0; j < s.size(); ++j) {
        if (spec.rank_of[j] < 0) continue;
        total += std::norm(s.amp[j]) * (spec.c_max - spec.costs[j]) / span;
    }
    return total;
}

double participation_ratio(const StateVector& s) {
    double sum2 = 0.0;
    for (const auto& a : s.amp) {
        double p = std::norm(a);
        sum2 += p * p;
    }
    return 1.0 / (static_cast<double>(s.size()) * sum2);
}

std::vector<double> ranking_probabilities(const StateVector& s, const Spectrum& spec) {
    check(s, spec);
    std::vector<double> out(spec.rank_count(), 0.0);
    for (basis_t j = 0; j < s.size(); ++j)
        if (spec.rank_of[j] >= 0) out[spec.rank_of[j]] += std::norm(s.amp[j]);
    return out;
}

double top_fraction_probability(const StateVector& s, const Spectrum& spec, double fraction) {
    check(s, spec);
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::invalid_argument("fraction must be in (0, 1]");
    int take = static_cast<int>(std::ceil(fraction * spec.rank_count()));
    take = std::max(take, 1);
    double total = 0.0;
    for (basis_t j = 0; j < s.size(); ++j)
        if (spec.rank_of[j] >= 0 && spec.rank_of[j] < take) total += std::norm(s.amp[j]);
    return total;
}

double approx_ratio_tilde(const StateVector& s, const Spectrum& spec) {
    check(s, spec);
    if (spec.degenerate())
        throw std::runtime_error("approximation ratio is undefined on a single-level spectrum");
    double expect = 0.0;
    for (basis_t j = 0; j < s.size(); ++j) expect += std::norm(s.amp[j]) * spec.costs[j];
    return (spec.c_max - expect) / (spec.c_max - spec.c_min);
}

double infeasible_mass(const StateVector& s, const Spectrum& spec) {
    check(s, spec);
    if (spec.feasible_mask.empty()) return 0.0;
    double total = 0.0;
    for (basis_t j = 0; j < s.size(); ++j)
        if (!spec.feasible_mask[j]) total += std::norm(s.amp[j]);
    return total;
}

MetricBundle collect_metrics(const StateVector& s, const Spectrum& spec, double t,
                             int tracked_ranks, double top_fraction) {
    MetricBundle b;
    b.t = t;
    b.quality = quality_expectation(s, spec);
    b.participation_ratio = participation_ratio(s);
    b.top_fraction_prob = top_fraction_probability(s, spec, top_fraction);
    b.infeasible_mass = infeasible_mass(s, spec);
    auto ranks = ranking_probabilities(s, spec);
    int keep = std::min<int>(tracked_ranks, static_cast<int>(ranks.size()));
    b.rank_probs.assign(ranks.begin(), ranks.begin() + keep);
    b.rank_probs.resize(tracked_ranks, 0.0);
    return b;
}

}  // namespace gqw
