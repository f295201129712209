#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gqwalk/engine.hpp"
#include "gqwalk/mixers.hpp"
#include "gqwalk/schedule.hpp"
#include "gqwalk/spectrum.hpp"

namespace gqw {

struct OptResult {
    std::vector<double> best_params;
    double best_value = 0.0;  // minimization convention
    int iterations_used = 0;  // objective evaluations consumed
    std::vector<std::pair<std::vector<double>, double>> history;
};

using Objective = std::function<double(const std::vector<double>&)>;

// Bounded Nelder-Mead. Candidates are clipped into [lo, hi] before every
// evaluation, the initial simplex spread is seeded, and the total number of
// objective calls is capped at max_iter plus the simplex size (or at eval_cap
// when one is given).
OptResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                      const std::vector<double>& lo, const std::vector<double>& hi, int max_iter,
                      std::uint64_t seed, int eval_cap = -1);

enum class TuneObjective { quality, p_rank0 };

// Tunes the six Bezier profile parameters for a fixed evolution time T.
// max_iter = 0 performs exactly one evaluation at the starting point.
OptResult tune_gqw(const Spectrum& spec, const MixerSpec& mixer, double total_time,
                   int layer_count, int max_iter, TuneObjective objective, std::uint64_t seed,
                   const EvolveOptions& opts = {});

// Tunes 2p angle pairs maximizing the scaled approximation ratio; the budget
// is split across a few independent seeded restarts.
OptResult tune_qaoa(const Spectrum& spec, const MixerSpec& mixer, int p, int max_iter,
                    std::uint64_t seed, int restarts = 3, int inner_trotter = 4);

}  // namespace gqw
