#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "gqwalk/mixers.hpp"
#include "gqwalk/polynomial.hpp"
#include "gqwalk/problems.hpp"
#include "gqwalk/spectrum.hpp"

namespace gqw {

// Time budget assigned to a hopping-rate level e is k_level_time / e.
constexpr double k_level_time = std::numbers::pi / (2.0 * std::numbers::sqrt2);

struct GapEntry {
    double energy = 0.0;  // cost value the entry is keyed by
    double gap_sum = 0.0;
    std::uint64_t count = 0;

    double mean() const { return gap_sum / static_cast<double>(count); }
};

struct SampledGaps {
    std::vector<GapEntry> entries;  // sorted by energy, highest first
    std::uint64_t q_requested = 0;
    std::uint64_t q_used = 0;
};

// Downhill half-gap survey: visits q random unvisited feasible states, records
// for each the largest (C(x)-C(y))/gap over strictly lower neighbours, and
// folds it into a per-cost-value running mean. Local minima consume a draw but
// contribute no entry. A symmetry mate is marked visited alongside its state.
SampledGaps sample_gaps(const Polynomial& poly, const MixerSpec& mixer, std::uint64_t q,
                        const SymmetryTag& symmetry, std::uint64_t seed);

// The hopping-rate curve in the cost domain: (energy, mean half-gap) pairs.
std::vector<std::pair<double, double>> gamma_of_energy(const SampledGaps& gaps);

// Piecewise-linear hopping rate through the sampled levels: starts at the
// largest level, each level e holds a segment of duration k_level_time / e,
// and the rate falls to 0 at the end of the last segment.
struct Schedule {
    std::vector<double> levels;      // strictly decreasing, all > 0
    std::vector<double> durations;   // same length
    std::vector<double> node_times;  // levels.size() + 1 entries, node_times[0] = 0
    double total_time = 0.0;

    std::size_t segment_count() const { return levels.size(); }
};

Schedule build_schedule(const SampledGaps& gaps);
Schedule schedule_from_levels(const std::vector<double>& mean_gaps);

double gamma_at(const Schedule& s, double t);

struct Layer {
    double dt = 0.0;
    double theta = 0.0;  // dt * midpoint hopping rate of the slice
};

struct LayerPlan {
    std::vector<Layer> layers;
    std::vector<int> slices_per_segment;
    double total_time = 0.0;

    std::uint64_t total_slices() const { return layers.size(); }
};

LayerPlan discretize(const Schedule& s, int uniform_slices);
LayerPlan discretize(const Schedule& s, const std::vector<int>& slices_per_segment);

// Brute-force total time over every mixer-graph transition; diagnostic only.
double exact_total_time(const Spectrum& spec, const MixerSpec& mixer);

// Cubic Bezier hopping-rate profile through (0,1) and (1,0) with free inner
// control points; the vertical axis is blended between 10^(2a) and 10^(-3b).
struct BezierParams {
    std::array<double, 6> v{};  // x1, y1, x2, y2, a, b
};

double bezier_gamma(const BezierParams& p, double t_norm);
LayerPlan bezier_layer_plan(const BezierParams& p, double total_time, int layer_count);

}  // namespace gqw
