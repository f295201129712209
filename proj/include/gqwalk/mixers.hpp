#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gqwalk/bits.hpp"
#include "gqwalk/state.hpp"

namespace gqw {

enum class MixerKind { x_hypercube, xy_ring };

// Both mixers have local spectral gap 2 between the states a transition joins.
struct MixerSpec {
    MixerKind kind = MixerKind::x_hypercube;
    int n = 0;
    int hamming_weight = -1;  // xy_ring only
    double gap = 2.0;
};

MixerSpec make_x_mixer(int n);
MixerSpec make_xy_ring(int n, int hamming_weight);

bool is_feasible(const MixerSpec& m, basis_t x);
std::uint64_t feasible_count(const MixerSpec& m);

// Walk-graph neighbours of a feasible state; deduplicated, unsorted by bond.
std::vector<basis_t> neighbors(const MixerSpec& m, basis_t x);

// Ring bonds (i, i+1 mod n) as a deduplicated set of unordered pairs.
std::vector<std::pair<int, int>> ring_bonds(int n);

// Uniform superposition over the feasible set (the mixer ground state).
StateVector initial_state(const MixerSpec& m);

std::uint64_t binomial(int n, int k);

}  // namespace gqw
