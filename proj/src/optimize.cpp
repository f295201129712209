#include "gqwalk/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gqwalk/metrics.hpp"
#include "gqwalk/rng.hpp"

namespace gqw {

namespace {

std::vector<double> clipped(std::vector<double> x, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
}

struct Budget {
    const Objective& f;
    const std::vector<double>& lo;
    const std::vector<double>& hi;
    int cap;
    OptResult& out;

    bool spent() const { return out.iterations_used >= cap; }

    double eval(std::vector<double> x) {
        x = clipped(std::move(x), lo, hi);
        double v = f(x);
        out.history.emplace_back(x, v);
        ++out.iterations_used;
        if (v < out.best_value || out.history.size() == 1) {
            out.best_value = v;
            out.best_params = std::move(x);
        }
        return v;
    }
};

}  // namespace

OptResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                      const std::vector<double>& lo, const std::vector<double>& hi, int max_iter,
                      std::uint64_t seed, int eval_cap) {
    std::size_t d = x0.size();
    if (d == 0) throw std::invalid_argument("empty parameter vector");
    if (lo.size() != d || hi.size() != d) throw std::invalid_argument("bounds size mismatch");
    if (max_iter <= 0) throw std::invalid_argument("max_iter must be positive");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw std::invalid_argument("bounds must be finite with lo < hi");
        if (x0[i] < lo[i] || x0[i] > hi[i])
            throw std::invalid_argument("starting point outside bounds");
    }

    OptResult out;
    out.best_value = std::numeric_limits<double>::infinity();
    int cap = eval_cap > 0 ? eval_cap : max_iter + static_cast<int>(d) + 1;
    Budget budget{f, lo, hi, cap, out};
    Rng rng(seed);

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    vals.push_back(budget.eval(x0));
    for (std::size_t i = 0; i < d && !budget.spent(); ++i) {
        std::vector<double> v = x0;
        double step = 0.25 * (hi[i] - lo[i]) * (0.5 + rng.real());
        if (v[i] + step > hi[i]) step = -step;
        v[i] += step;
        pts.push_back(clipped(std::move(v), lo, hi));
        vals.push_back(budget.eval(pts.back()));
    }
    if (pts.size() < d + 1) return out;  // budget spent during simplex setup

    std::vector<std::size_t> ord(d + 1);
    auto sort_simplex = [&] {
        std::iota(ord.begin(), ord.end(), std::size_t{0});
        std::stable_sort(ord.begin(), ord.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };

    while (!budget.spent()) {
        sort_simplex();
        std::size_t best = ord[0], worst = ord[d], second = ord[d - 1];
        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k <= d; ++k)
            if (ord[k] != worst)
                for (std::size_t i = 0; i < d; ++i) centroid[i] += pts[ord[k]][i] / d;

        std::vector<double> xr(d);
        for (std::size_t i = 0; i < d; ++i) xr[i] = 2.0 * centroid[i] - pts[worst][i];
        xr = clipped(std::move(xr), lo, hi);
        double fr = budget.eval(xr);

        if (fr < vals[best]) {
            if (!budget.spent()) {
                std::vector<double> xe(d);
                for (std::size_t i = 0; i < d; ++i) xe[i] = centroid[i] + 2.0 * (xr[i] - centroid[i]);
                xe = clipped(std::move(xe), lo, hi);
                double fe = budget.eval(xe);
                if (fe < fr) {
                    pts[worst] = xe;
                    vals[worst] = fe;
                    continue;
                }
            }
            pts[worst] = xr;
            vals[worst] = fr;
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            bool outside = fr < vals[worst];
            if (budget.spent()) break;
            std::vector<double> xc(d);
            const std::vector<double>& toward = outside ? xr : pts[worst];
            for (std::size_t i = 0; i < d; ++i) xc[i] = centroid[i] + 0.5 * (toward[i] - centroid[i]);
            xc = clipped(std::move(xc), lo, hi);
            double fc = budget.eval(xc);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 1; k <= d && !budget.spent(); ++k) {
                    std::size_t j = ord[k];
                    for (std::size_t i = 0; i < d; ++i)
                        pts[j][i] = pts[best][i] + 0.5 * (pts[j][i] - pts[best][i]);
                    pts[j] = clipped(std::move(pts[j]), lo, hi);
                    vals[j] = budget.eval(pts[j]);
                }
            }
        }
    }
    return out;
}

OptResult tune_gqw(const Spectrum& spec, const MixerSpec& mixer, double total_time,
                   int layer_count, int max_iter, TuneObjective objective, std::uint64_t seed,
                   const EvolveOptions& opts) {
    if (max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
    if (total_time <= 0.0) throw std::invalid_argument("total time must be positive");
    StateVector init = initial_state(mixer);
    Objective f = [&](const std::vector<double>& x) {
        BezierParams p;
        std::copy(x.begin(), x.end(), p.v.begin());
        LayerPlan plan = bezier_layer_plan(p, total_time, layer_count);
        EvolutionTrace tr = evolve_layer_plan(init, plan, spec, mixer, opts);
        const MetricBundle& last = tr.snapshots.back();
        double score = objective == TuneObjective::quality
                           ? last.quality
                           : (last.rank_probs.empty() ? 0.0 : last.rank_probs[0]);
        return -score;
    };
    std::vector<double> x0(6, 0.5), lo(6, 0.0), hi(6, 1.0);
    int cap = max_iter == 0 ? 1 : -1;
    return nelder_mead(f, x0, lo, hi, std::max(max_iter, 1),
                       subsystem_seed(seed, "gqw-simplex"), cap);
}

OptResult tune_qaoa(const Spectrum& spec, const MixerSpec& mixer, int p, int max_iter,
                    std::uint64_t seed, int restarts, int inner_trotter) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    if (max_iter <= 0) throw std::invalid_argument("max_iter must be positive");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    StateVector init = initial_state(mixer);
    Objective f = [&](const std::vector<double>& angles) {
        StateVector s = qaoa_evolve(init, angles, spec, mixer, inner_trotter);
        return -approx_ratio_tilde(s, spec);
    };
    std::size_t d = 2 * static_cast<std::size_t>(p);
    std::vector<double> lo(d, -std::numbers::pi), hi(d, std::numbers::pi);
    Rng start_rng(subsystem_seed(seed, "qaoa-init"));
    int per_run = std::max(1, max_iter / restarts);

    OptResult merged;
    merged.best_value = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> x0(d);
        for (auto& v : x0) v = start_rng.real(-std::numbers::pi, std::numbers::pi);
        OptResult run = nelder_mead(f, x0, lo, hi, per_run, start_rng.u64());
        merged.iterations_used += run.iterations_used;
        if (run.best_value < merged.best_value) {
            merged.best_value = run.best_value;
            merged.best_params = run.best_params;
        }
        for (auto& h : run.history) merged.history.push_back(std::move(h));
    }
    return merged;
}

}  // namespace gqw
