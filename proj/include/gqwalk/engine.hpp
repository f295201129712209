#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gqwalk/metrics.hpp"
#include "gqwalk/mixers.hpp"
#include "gqwalk/schedule.hpp"
#include "gqwalk/spectrum.hpp"
#include "gqwalk/state.hpp"

namespace gqw {

void apply_cost_phase(StateVector& s, const std::vector<double>& costs, double dt);

// R_X(theta) on every qubit.
void apply_x_mixer_layer(StateVector& s, double theta);

// exp(i phi (|01><10| + |10><01|)) on the (i, j) pair block.
void apply_xy_bond(StateVector& s, int i, int j, double phi);

// One ring-mixer layer of total angle phi, split into inner_trotter rounds of
// even bonds then odd bonds, each bond applied as its exact pair rotation.
void apply_xy_ring_layer(StateVector& s, double phi, int inner_trotter);

struct EvolveOptions {
    bool maximize = false;
    int inner_trotter = 4;
    int snapshot_every = 0;  // 0: first and last only
    int tracked_ranks = 8;
    double top_fraction = 0.05;
};

struct EvolutionTrace {
    std::vector<MetricBundle> snapshots;
    StateVector final_state;
};

EvolutionTrace evolve_layer_plan(const StateVector& initial, const LayerPlan& plan,
                                 const Spectrum& spec, const MixerSpec& mixer,
                                 const EvolveOptions& opts = {});

constexpr int k_reference_cap = 12;

// Dense integrator: exact matrix exponential per sub-step with the hopping
// rate frozen at the sub-step midpoint. Capped at n = 12.
StateVector evolve_reference(const StateVector& initial, const Schedule& sched,
                             const Spectrum& spec, const MixerSpec& mixer,
                             int steps_per_segment, bool maximize = false);

StateVector evolve_dense_gamma(const StateVector& initial,
                               const std::function<double(double)>& gamma, double t0, double t1,
                               int steps, const Spectrum& spec, const MixerSpec& mixer,
                               bool maximize = false);

// angles = (gamma_1, beta_1, ..., gamma_p, beta_p): cost phase gamma_k then a
// full mixer rotation beta_k per round.
StateVector qaoa_evolve(const StateVector& initial, const std::vector<double>& angles,
                        const Spectrum& spec, const MixerSpec& mixer, int inner_trotter = 4);

// Closed-form lower-state transfer probability of the isolated two-state
// system with half-gap delta, hopping rate gamma and the equal superposition
// as the start state.
double two_state_lower_probability(double t, double gamma, double delta);

std::vector<basis_t> sample_shots(const StateVector& s, std::uint64_t shots,
                                  std::uint64_t seed);

}  // namespace gqw
