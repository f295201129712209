#include "gqwalk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gqwalk/rng.hpp"

namespace gqw {

void apply_cost_phase(StateVector& s, const std::vector<double>& costs, double dt) {
    if (s.size() != costs.size()) throw std::invalid_argument("cost table size mismatch");
    for (std::size_t j = 0; j < s.size(); ++j) {
        double ang = -dt * costs[j];
        s.amp[j] *= cplx{std::cos(ang), std::sin(ang)};
    }
}

void apply_x_mixer_layer(StateVector& s, double theta) {
    double c = std::cos(0.5 * theta);
    double v = std::sin(0.5 * theta);
    cplx ms{0.0, -v};
    for (int b = 0; b < s.n; ++b) {
        std::size_t mask = std::size_t{1} << b;
        for (std::size_t base = 0; base < s.size(); ++base) {
            if (base & mask) continue;
            cplx a0 = s.amp[base];
            cplx a1 = s.amp[base | mask];
            s.amp[base] = c * a0 + ms * a1;
            s.amp[base | mask] = ms * a0 + c * a1;
        }
    }
}

void apply_xy_bond(StateVector& s, int i, int j, double phi) {
    std::size_t mi = std::size_t{1} << i;
    std::size_t mj = std::size_t{1} << j;
    double c = std::cos(phi);
    cplx is{0.0, std::sin(phi)};
    for (std::size_t a = 0; a < s.size(); ++a) {
        if ((a & mi) || !(a & mj)) continue;
        std::size_t b = a ^ mi ^ mj;
        cplx va = s.amp[a];
        cplx vb = s.amp[b];
        s.amp[a] = c * va + is * vb;
        s.amp[b] = is * va + c * vb;
    }
}

void apply_xy_ring_layer(StateVector& s, double phi, int inner_trotter) {
    if (inner_trotter < 1) throw std::invalid_argument("inner trotter must be >= 1");
    auto bonds = ring_bonds(s.n);
    double sub = phi / inner_trotter;
    for (int round = 0; round < inner_trotter; ++round) {
        for (const auto& [i, j] : bonds)
            if (i % 2 == 0) apply_xy_bond(s, i, j, sub);
        for (const auto& [i, j] : bonds)
            if (i % 2 == 1) apply_xy_bond(s, i, j, sub);
    }
}

namespace {

void apply_mixer(StateVector& s, const MixerSpec& mixer, double theta, bool maximize,
                 int inner_trotter) {
    double sign = maximize ? 1.0 : -1.0;
    if (mixer.kind == MixerKind::x_hypercube) {
        apply_x_mixer_layer(s, sign * 2.0 * theta);
    } else {
        apply_xy_ring_layer(s, -sign * theta, inner_trotter);
    }
}

}  // namespace

EvolutionTrace evolve_layer_plan(const StateVector& initial, const LayerPlan& plan,
                                 const Spectrum& spec, const MixerSpec& mixer,
                                 const EvolveOptions& opts) {
    if (initial.n != spec.n || initial.n != mixer.n)
        throw std::invalid_argument("dimension mismatch");
    EvolutionTrace trace;
    StateVector s = initial;
    double t = 0.0;
    trace.snapshots.push_back(
        collect_metrics(s, spec, t, opts.tracked_ranks, opts.top_fraction));
    std::size_t count = plan.layers.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        const Layer& layer = plan.layers[idx];
        apply_cost_phase(s, spec.costs, layer.dt);
        apply_mixer(s, mixer, layer.theta, opts.maximize, opts.inner_trotter);
        t += layer.dt;
        bool due = opts.snapshot_every > 0 && (idx + 1) % opts.snapshot_every == 0;
        if (due || idx + 1 == count)
            trace.snapshots.push_back(
                collect_metrics(s, spec, t, opts.tracked_ranks, opts.top_fraction));
    }
    trace.final_state = std::move(s);
    return trace;
}

namespace {

// Matrix-free application of H = Gamma*H_M + H_C and a machine-precision
// exponential step: each sub-step applies exp(-i*dt*H) for the frozen
// midpoint Hamiltonian through a scaled Taylor series (split so every
// application satisfies dt*||H|| <= 0.8, remainder below 1e-27).
struct DenseStepper {
    int n;
    std::vector<double> costs;
    MixerKind kind;
    std::vector<std::pair<int, int>> bonds;
    double mixer_sign;  // -1 minimize, +1 maximize
    double cost_bound = 0.0;
    std::vector<cplx> psi, term, next;

    DenseStepper(const StateVector& s, const Spectrum& spec, const MixerSpec& mixer,
                 bool maximize)
        : n(s.n), costs(spec.costs), kind(mixer.kind), mixer_sign(maximize ? 1.0 : -1.0),
          psi(s.amp) {
        if (s.n > k_reference_cap)
            throw std::invalid_argument("dense reference is capped at n = " +
                                        std::to_string(k_reference_cap));
        if (s.n != spec.n || s.n != mixer.n) throw std::invalid_argument("dimension mismatch");
        if (kind == MixerKind::xy_ring) bonds = ring_bonds(mixer.n);
        for (double c : costs) cost_bound = std::max(cost_bound, std::abs(c));
        term.resize(psi.size());
        next.resize(psi.size());
    }

    void h_apply(double gamma, const std::vector<cplx>& v, std::vector<cplx>& out) const {
        std::size_t dim = v.size();
        for (std::size_t j = 0; j < dim; ++j) out[j] = costs[j] * v[j];
        double g = mixer_sign * gamma;  // H_M is mixer_sign times the walk adjacency
        if (kind == MixerKind::x_hypercube) {
            for (int b = 0; b < n; ++b) {
                std::size_t mask = std::size_t{1} << b;
                for (std::size_t j = 0; j < dim; ++j) out[j] += g * v[j ^ mask];
            }
        } else {
            for (const auto& [i, j] : bonds) {
                std::size_t mi = std::size_t{1} << i, mj = std::size_t{1} << j;
                for (std::size_t a = 0; a < dim; ++a)
                    if (((a & mi) == 0) && (a & mj)) {
                        std::size_t b2 = a ^ mi ^ mj;
                        out[a] += g * v[b2];
                        out[b2] += g * v[a];
                    }
            }
        }
    }

    void step(double gamma, double dt) {
        double bound = std::abs(dt) * (std::abs(gamma) * n + cost_bound);
        int splits = 1 + static_cast<int>(bound / 0.8);
        double sub = dt / splits;
        for (int s = 0; s < splits; ++s) {
            term = psi;
            for (int k = 1; k <= 24; ++k) {
                h_apply(gamma, term, next);
                cplx f = cplx{0.0, -sub / k};
                double sup = 0.0;
                for (std::size_t j = 0; j < psi.size(); ++j) {
                    next[j] *= f;
                    psi[j] += next[j];
                    sup = std::max(sup, std::abs(next[j]));
                }
                term.swap(next);
                if (sup < 1e-18) break;
            }
        }
    }

    StateVector state() const {
        StateVector s = StateVector::zeros(n);
        s.amp = psi;
        return s;
    }
};

}  // namespace

StateVector evolve_dense_gamma(const StateVector& initial,
                               const std::function<double(double)>& gamma, double t0, double t1,
                               int steps, const Spectrum& spec, const MixerSpec& mixer,
                               bool maximize) {
    if (steps < 1) throw std::invalid_argument("need at least one step");
    if (t1 < t0) throw std::invalid_argument("bad time interval");
    DenseStepper st(initial, spec, mixer, maximize);
    double dt = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        double mid = t0 + (i + 0.5) * dt;
        st.step(gamma(mid), dt);
    }
    return st.state();
}

StateVector evolve_reference(const StateVector& initial, const Schedule& sched,
                             const Spectrum& spec, const MixerSpec& mixer,
                             int steps_per_segment, bool maximize) {
    if (steps_per_segment < 1) throw std::invalid_argument("need at least one step");
    DenseStepper st(initial, spec, mixer, maximize);
    for (std::size_t l = 0; l < sched.segment_count(); ++l) {
        double g0 = sched.levels[l];
        double g1 = l + 1 < sched.segment_count() ? sched.levels[l + 1] : 0.0;
        double dt = sched.durations[l] / steps_per_segment;
        for (int r = 0; r < steps_per_segment; ++r) {
            double gbar = g0 - (r + 0.5) * (g0 - g1) / steps_per_segment;
            st.step(gbar, dt);
        }
    }
    return st.state();
}

StateVector qaoa_evolve(const StateVector& initial, const std::vector<double>& angles,
                        const Spectrum& spec, const MixerSpec& mixer, int inner_trotter) {
    if (angles.size() % 2 != 0) throw std::invalid_argument("need gamma/beta angle pairs");
    if (initial.n != spec.n || initial.n != mixer.n)
        throw std::invalid_argument("dimension mismatch");
    StateVector s = initial;
    for (std::size_t k = 0; k < angles.size(); k += 2) {
        apply_cost_phase(s, spec.costs, angles[k]);
        double beta = angles[k + 1];
        if (mixer.kind == MixerKind::x_hypercube)
            apply_x_mixer_layer(s, -2.0 * beta);
        else
            apply_xy_ring_layer(s, beta, inner_trotter);
    }
    return s;
}

double two_state_lower_probability(double t, double gamma, double delta) {
    double w2 = gamma * gamma + delta * delta;
    if (w2 == 0.0) return 0.5;
    double w = std::sqrt(w2);
    double sn = std::sin(t * w);
    return 0.5 + gamma * delta / w2 * sn * sn;
}

std::vector<basis_t> sample_shots(const StateVector& s, std::uint64_t shots,
                                  std::uint64_t seed) {
    std::vector<double> cdf(s.size());
    double run = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        run += std::norm(s.amp[j]);
        cdf[j] = run;
    }
    Rng rng(subsystem_seed(seed, "shots"));
    std::vector<basis_t> out;
    out.reserve(shots);
    for (std::uint64_t i = 0; i < shots; ++i) {
        double u = rng.real() * run;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t j = std::min<std::size_t>(it - cdf.begin(), s.size() - 1);
        out.push_back(j);
    }
    return out;
}

}  // namespace gqw
