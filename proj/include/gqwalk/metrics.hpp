#pragma once

#include <vector>

#include "gqwalk/spectrum.hpp"
#include "gqwalk/state.hpp"

namespace gqw {

struct MetricBundle {
    double t = 0.0;
    double quality = 0.0;
    double participation_ratio = 0.0;
    double top_fraction_prob = 0.0;
    double infeasible_mass = 0.0;
    std::vector<double> rank_probs;  // leading ranks only
};

// Probability-weighted solution quality in [0, 1]; 1 at the minimum cost,
// 0 at the maximum or on infeasible states, 1 everywhere when the spectrum
// is a single level.
double quality_expectation(const StateVector& s, const Spectrum& spec);

// 1 / (2^n sum p^2): 1 on the uniform state, 1/2^n on a basis state.
double participation_ratio(const StateVector& s);

// Probability per cost rank, index = rank.
std::vector<double> ranking_probabilities(const StateVector& s, const Spectrum& spec);

// Mass on the best ceil(fraction * rank_count) ranks (at least one).
double top_fraction_probability(const StateVector& s, const Spectrum& spec, double fraction);

// (c_max - <C>) / (c_max - c_min); undefined on single-level spectra.
double approx_ratio_tilde(const StateVector& s, const Spectrum& spec);

double infeasible_mass(const StateVector& s, const Spectrum& spec);

MetricBundle collect_metrics(const StateVector& s, const Spectrum& spec, double t,
                             int tracked_ranks = 8, double top_fraction = 0.05);

}  // namespace gqw
