#include "gqwalk/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gqwalk/rng.hpp"

namespace gqw {

namespace {

constexpr std::uint64_t k_pool_threshold = std::uint64_t{1} << 22;

// Uniform draws without replacement, with external marking (symmetry mates).
class SamplePool {
public:
    SamplePool(const MixerSpec& mixer, std::uint64_t seed)
        : mixer_(mixer), rng_(seed), total_(feasible_count(mixer)) {
        if (total_ <= k_pool_threshold) {
            pool_.reserve(total_);
            if (mixer.kind == MixerKind::x_hypercube) {
                for (basis_t x = 0; x < total_; ++x) pool_.push_back(x);
            } else {
                int k = mixer.hamming_weight;
                if (k == 0) {
                    pool_.push_back(0);
                } else {
                    basis_t x = full_mask(k);
                    basis_t limit = basis_t{1} << mixer.n;
                    while (x < limit) {
                        pool_.push_back(x);
                        basis_t c = x & (0 - x);
                        basis_t r = x + c;
                        if (r >= limit) break;
                        x = (((r ^ x) >> 2) / c) | r;
                    }
                }
            }
            pos_.reserve(pool_.size());
            for (std::size_t i = 0; i < pool_.size(); ++i) pos_[pool_[i]] = i;
        }
    }

    std::uint64_t remaining() const {
        return pool_.empty() ? total_ - visited_.size() : pool_.size() - cursor_;
    }

    basis_t draw() {
        if (!pool_.empty()) {
            std::size_t r = cursor_ + rng_.below(pool_.size() - cursor_);
            basis_t x = pool_[r];
            swap_into_visited(r);
            return x;
        }
        for (;;) {
            basis_t x = random_feasible();
            if (visited_.insert(x).second) return x;
        }
    }

    void mark(basis_t x) {
        if (!pool_.empty()) {
            auto it = pos_.find(x);
            if (it == pos_.end() || it->second < cursor_) return;
            swap_into_visited(it->second);
        } else {
            visited_.insert(x);
        }
    }

private:
    void swap_into_visited(std::size_t r) {
        basis_t x = pool_[r];
        basis_t head = pool_[cursor_];
        std::swap(pool_[cursor_], pool_[r]);
        pos_[head] = r;
        pos_[x] = cursor_;
        ++cursor_;
    }

    basis_t random_feasible() {
        if (mixer_.kind == MixerKind::x_hypercube)
            return rng_.below(std::uint64_t{1} << mixer_.n);
        // random combination: partial shuffle of the position list
        std::vector<int> idx(mixer_.n);
        for (int i = 0; i < mixer_.n; ++i) idx[i] = i;
        basis_t x = 0;
        for (int t = 0; t < mixer_.hamming_weight; ++t) {
            std::size_t r = t + rng_.below(mixer_.n - t);
            std::swap(idx[t], idx[r]);
            x |= basis_t{1} << idx[t];
        }
        return x;
    }

    MixerSpec mixer_;
    Rng rng_;
    std::uint64_t total_;
    std::vector<basis_t> pool_;
    std::unordered_map<basis_t, std::size_t> pos_;
    std::size_t cursor_ = 0;
    std::unordered_set<basis_t> visited_;
};

}  // namespace

SampledGaps sample_gaps(const Polynomial& poly, const MixerSpec& mixer, std::uint64_t q,
                        const SymmetryTag& symmetry, std::uint64_t seed) {
    if (poly.n != mixer.n) throw std::invalid_argument("sample_gaps: dimension mismatch");
    if (q < 1) throw std::invalid_argument("sample_gaps: need q >= 1");
    std::uint64_t total = feasible_count(mixer);
    if (q > total)
        throw std::invalid_argument("sample_gaps: q exceeds the feasible set size " +
                                    std::to_string(total));

    SamplePool pool(mixer, seed);
    std::map<double, std::pair<double, std::uint64_t>> acc;  // energy -> (sum, count)
    SampledGaps out;
    out.q_requested = q;

    for (std::uint64_t i = 0; i < q; ++i) {
        if (pool.remaining() == 0) break;
        basis_t x = pool.draw();
        ++out.q_used;
        double cx = evaluate(poly, x);
        bool found = false;
        double best = 0.0;
        for (basis_t y : neighbors(mixer, x)) {
            double cy = evaluate(poly, y);
            if (!strictly_below(cy, cx)) continue;
            double g = (cx - cy) / mixer.gap;
            if (!found || g > best) best = g;
            found = true;
        }
        if (found) {
            // fuzzy key lookup: the nearest stored energy within tolerance
            auto it = acc.lower_bound(cx);
            auto hit = acc.end();
            if (it != acc.end() && !values_distinct(it->first, cx)) hit = it;
            if (hit == acc.end() && it != acc.begin()) {
                auto prev = std::prev(it);
                if (!values_distinct(prev->first, cx)) hit = prev;
            }
            if (hit == acc.end()) {
                acc.emplace(cx, std::make_pair(best, std::uint64_t{1}));
            } else {
                hit->second.first += best;
                hit->second.second += 1;
            }
        }
        if (symmetry.active()) {
            basis_t mate = symmetry.mate(x);
            if (mate != x && is_feasible(mixer, mate)) pool.mark(mate);
        }
    }

    out.entries.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        out.entries.push_back({it->first, it->second.first, it->second.second});
    return out;
}

std::vector<std::pair<double, double>> gamma_of_energy(const SampledGaps& gaps) {
    std::vector<std::pair<double, double>> out;
    out.reserve(gaps.entries.size());
    for (const auto& e : gaps.entries) out.push_back({e.energy, e.mean()});
    return out;
}

Schedule schedule_from_levels(const std::vector<double>& mean_gaps) {
    std::vector<double> vals = mean_gaps;
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    Schedule s;
    for (double v : vals) {
        if (v <= 0.0) throw std::invalid_argument("hopping-rate levels must be positive");
        if (s.levels.empty() || values_distinct(s.levels.back(), v)) s.levels.push_back(v);
    }
    if (s.levels.empty())
        throw std::runtime_error("no descending transitions sampled; cannot build a schedule");
    s.node_times.push_back(0.0);
    for (double e : s.levels) {
        s.durations.push_back(k_level_time / e);
        s.node_times.push_back(s.node_times.back() + s.durations.back());
    }
    s.total_time = s.node_times.back();
    return s;
}

Schedule build_schedule(const SampledGaps& gaps) {
    std::vector<double> means;
    means.reserve(gaps.entries.size());
    for (const auto& e : gaps.entries) means.push_back(e.mean());
    return schedule_from_levels(means);
}

double gamma_at(const Schedule& s, double t) {
    if (s.levels.empty()) throw std::invalid_argument("empty schedule");
    if (t <= 0.0) return s.levels.front();
    if (t >= s.total_time) return 0.0;
    auto it = std::upper_bound(s.node_times.begin(), s.node_times.end(), t);
    std::size_t seg = static_cast<std::size_t>(it - s.node_times.begin()) - 1;
    double lo = s.node_times[seg], hi = s.node_times[seg + 1];
    double v0 = s.levels[seg];
    double v1 = seg + 1 < s.levels.size() ? s.levels[seg + 1] : 0.0;
    double u = (t - lo) / (hi - lo);
    return v0 + u * (v1 - v0);
}

LayerPlan discretize(const Schedule& s, int uniform_slices) {
    return discretize(s, std::vector<int>(s.segment_count(), uniform_slices));
}

LayerPlan discretize(const Schedule& s, const std::vector<int>& slices_per_segment) {
    if (s.levels.empty()) throw std::invalid_argument("empty schedule");
    if (slices_per_segment.size() != s.segment_count())
        throw std::invalid_argument("slice list length must match the segment count");
    LayerPlan plan;
    plan.slices_per_segment = slices_per_segment;
    plan.total_time = s.total_time;
    for (std::size_t l = 0; l < s.levels.size(); ++l) {
        int p = slices_per_segment[l];
        if (p < 1) throw std::invalid_argument("slice counts must be >= 1");
        double g0 = s.levels[l];
        double g1 = l + 1 < s.levels.size() ? s.levels[l + 1] : 0.0;
        double dt = s.durations[l] / p;
        for (int r = 0; r < p; ++r) {
            double g = g0 - (r + 0.5) * (g0 - g1) / p;
            plan.layers.push_back({dt, dt * g});
        }
    }
    return plan;
}

double exact_total_time(const Spectrum& spec, const MixerSpec& mixer) {
    if (spec.n != mixer.n) throw std::invalid_argument("dimension mismatch");
    if (spec.n > 10) throw std::invalid_argument("exact total time is capped at n = 10");
    double total = 0.0;
    for (basis_t j = 0; j < spec.size(); ++j) {
        if (!spec.is_feasible(j)) continue;
        if (mixer.kind == MixerKind::xy_ring && !is_feasible(mixer, j)) continue;
        for (basis_t k : neighbors(mixer, j)) {
            if (k <= j) continue;  // each unordered transition once
            double d = std::abs(spec.costs[j] - spec.costs[k]) / mixer.gap;
            if (d > 0.0 && values_distinct(spec.costs[j], spec.costs[k]))
                total += k_level_time / d;
        }
    }
    return total;
}

namespace {

constexpr double k_bezier_pinch = 1e-3;

double bezier_point(double c0, double c1, double c2, double c3, double u) {
    double w = 1.0 - u;
    return c0 * w * w * w + 3.0 * c1 * w * w * u + 3.0 * c2 * w * u * u + c3 * u * u * u;
}

}  // namespace

double bezier_gamma(const BezierParams& p, double t_norm) {
    for (double v : p.v)
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("bezier parameters must lie in [0, 1]");
    double t = std::clamp(t_norm, 0.0, 1.0);
    // pinch keeps x(u) strictly increasing so the inverse is single valued
    double x1 = k_bezier_pinch + (1.0 - k_bezier_pinch) * p.v[0];
    double x2 = (1.0 - k_bezier_pinch) * p.v[2];
    double u;
    if (t == 0.0) {
        u = 0.0;
    } else if (t == 1.0) {
        u = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 64; ++i) {
            double mid = 0.5 * (lo + hi);
            if (bezier_point(0.0, x1, x2, 1.0, mid) < t) lo = mid;
            else hi = mid;
            if (hi - lo <= 1e-10) break;
        }
        u = 0.5 * (lo + hi);
    }
    double y = bezier_point(1.0, p.v[1], p.v[3], 0.0, u);
    double top = std::pow(10.0, 2.0 * p.v[4]);
    double bottom = std::pow(10.0, -3.0 * p.v[5]);
    return y * top + (1.0 - y) * bottom;
}

LayerPlan bezier_layer_plan(const BezierParams& p, double total_time, int layer_count) {
    if (total_time <= 0.0) throw std::invalid_argument("total time must be positive");
    if (layer_count < 1) throw std::invalid_argument("need at least one layer");
    LayerPlan plan;
    plan.total_time = total_time;
    plan.slices_per_segment.assign(1, layer_count);
    double dt = total_time / layer_count;
    for (int i = 0; i < layer_count; ++i) {
        double g = bezier_gamma(p, (i + 0.5) / layer_count);
        plan.layers.push_back({dt, dt * g});
    }
    return plan;
}

}  // namespace gqw
