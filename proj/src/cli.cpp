#include "gqwalk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqwalk/engine.hpp"
#include "gqwalk/io.hpp"
#include "gqwalk/metrics.hpp"
#include "gqwalk/mixers.hpp"
#include "gqwalk/optimize.hpp"
#include "gqwalk/problems.hpp"
#include "gqwalk/qasm.hpp"
#include "gqwalk/rng.hpp"
#include "gqwalk/schedule.hpp"
#include "gqwalk/spectrum.hpp"

namespace gqw {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out;
    bool maximize = false;
    std::uint64_t shots = 0;
    std::string mixer = "auto";
    int hamming_weight = -1;
};

struct Compiled {
    ProblemInstance inst;
    CompiledProblem cp;
    MixerSpec mixer;
};

Compiled compile_from_file(const std::string& path, const CommonOpts& c) {
    Compiled out;
    out.inst = instance_from_json(load_json(path));
    out.cp = compile_problem(out.inst);
    int n = out.cp.poly.n;
    if (c.mixer == "auto") {
        out.mixer = out.cp.constrained ? make_xy_ring(n, out.cp.default_hamming_weight)
                                       : make_x_mixer(n);
    } else if (c.mixer == "x") {
        out.mixer = make_x_mixer(n);
    } else {
        int hw = c.hamming_weight >= 0 ? c.hamming_weight : out.cp.default_hamming_weight;
        if (hw < 0) throw UsageError("--mixer xy needs --hamming-weight for this problem");
        if (out.cp.constrained && c.hamming_weight >= 0 &&
            c.hamming_weight != out.cp.default_hamming_weight)
            throw UsageError("--hamming-weight conflicts with the instance constraint");
        out.mixer = make_xy_ring(n, hw);
    }
    return out;
}

Spectrum spectrum_for(const Compiled& comp) {
    bool xy = comp.mixer.kind == MixerKind::xy_ring;
    bool constrained = comp.cp.constrained;
    if (!xy && !constrained) return enumerate_spectrum(comp.cp.poly);
    int k_problem = comp.cp.default_hamming_weight;
    int k_mixer = comp.mixer.hamming_weight;
    return enumerate_spectrum(comp.cp.poly, [=](basis_t x) {
        int w = weight(x);
        if (constrained && w != k_problem) return false;
        if (xy && w != k_mixer) return false;
        return true;
    });
}

std::uint64_t default_samples(int n, const MixerSpec& mixer) {
    std::uint64_t q = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
    return std::min(q, feasible_count(mixer));
}

json mixer_json(const MixerSpec& m) {
    json j{{"kind", m.kind == MixerKind::x_hypercube ? "x" : "xy"}};
    if (m.kind == MixerKind::xy_ring) j["hamming_weight"] = m.hamming_weight;
    return j;
}

std::string out_dir(const CommonOpts& c) {
    std::string dir = c.out.empty() ? std::string(".") : c.out;
    fs::create_directories(dir);
    return dir;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------- gen

struct GenGraphOpts {
    int n = 12;
    double p_edge = 0.5;
    bool weighted = false;
    std::vector<double> w_range{0.0, 1.0};
    std::string model;  // er or unit-disk
    double radius = 0.51;
    double box = 1.0;
};

struct GenOpts {
    GenGraphOpts maxcut{.model = "er"};
    GenGraphOpts mis{.model = "unit-disk"};
    double mis_lambda = -1.0;  // < 0 means the default rule
    int pf_n = 8;
    int pf_k = -1;  // -1 means n / 2
    double pf_lambda = 0.5;
    std::string pf_assets;
    int labs_n = 10;
    int sat_n = 10;
    int sat_k = 3;
    double sat_alpha = 2.0;
    int tsp_cities = 4;
    std::vector<double> tsp_range{0.0, 1.0};
};

Graph gen_graph(const GenGraphOpts& g, std::uint64_t seed) {
    if (g.model == "er")
        return gen_erdos_renyi(g.n, g.p_edge, g.weighted, g.w_range.at(0), g.w_range.at(1), seed);
    if (g.model == "unit-disk") return gen_unit_disk(g.n, g.radius, g.box, seed);
    throw UsageError("unknown graph model: " + g.model);
}

int cmd_gen(const CommonOpts& c, const GenOpts& g, const std::string& family) try {
    ProblemInstance inst;
    json gen_meta{{"seed", c.seed}};
    if (family == "maxcut") {
        inst.family = Family::maxcut;
        inst.graph = gen_graph(g.maxcut, c.seed);
        gen_meta["model"] = g.maxcut.model;
    } else if (family == "mis") {
        inst.family = Family::mis;
        inst.graph = gen_graph(g.mis, c.seed);
        if (g.mis_lambda >= 0.0) inst.mis_lambda = g.mis_lambda;
        gen_meta["model"] = g.mis.model;
    } else if (family == "portfolio") {
        inst.family = Family::portfolio;
        int k = g.pf_k >= 0 ? g.pf_k : g.pf_n / 2;
        if (g.pf_assets.empty()) {
            inst.portfolio = gen_portfolio(g.pf_n, k, g.pf_lambda, c.seed);
        } else {
            inst.portfolio = load_portfolio(g.pf_assets, g.pf_k, g.pf_lambda);
            if (g.pf_k < 0) inst.portfolio.k = inst.portfolio.n / 2;
            gen_meta["assets"] = g.pf_assets;
        }
    } else if (family == "labs") {
        inst.family = Family::labs;
        inst.labs_n = g.labs_n;
    } else if (family == "maxksat") {
        inst.family = Family::maxksat;
        inst.sat = gen_maxksat(g.sat_n, g.sat_k, g.sat_alpha, c.seed);
        gen_meta["alpha"] = g.sat_alpha;
    } else {
        inst.family = Family::tsp;
        inst.tsp = gen_tsp(g.tsp_cities, g.tsp_range.at(0), g.tsp_range.at(1), c.seed);
    }

    CompiledProblem cp = compile_problem(inst);
    MixerSpec natural = cp.constrained ? make_xy_ring(cp.poly.n, cp.default_hamming_weight)
                                       : make_x_mixer(cp.poly.n);
    json j = instance_to_json(inst);
    j["gen"] = gen_meta;
    std::string path = c.out.empty() ? "instance.json" : c.out;
    save_json(j, path);
    std::cout << family_name(inst.family) << ": n = " << cp.poly.n
              << " qubits, feasible space = " << feasible_count(natural) << ", wrote " << path
              << "\n";
    return 0;
} catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
}

// ---------------------------------------------------------------- schedule

struct BuiltSchedule {
    SampledGaps gaps;
    Schedule sched;
    bool exact = false;
};

BuiltSchedule build_from_instance(const Compiled& comp, std::uint64_t q_flag,
                                  std::uint64_t seed) {
    BuiltSchedule b;
    std::uint64_t q = q_flag > 0 ? q_flag : default_samples(comp.cp.poly.n, comp.mixer);
    b.gaps = sample_gaps(comp.cp.poly, comp.mixer, q, comp.cp.symmetry, seed);
    b.sched = build_schedule(b.gaps);
    b.exact = b.gaps.q_requested == feasible_count(comp.mixer);
    return b;
}

int cmd_schedule(const CommonOpts& c, const std::string& instance_path, std::uint64_t q_flag) {
    Compiled comp = compile_from_file(instance_path, c);
    BuiltSchedule b = build_from_instance(comp, q_flag, c.seed);
    std::string dir = out_dir(c);
    save_json(schedule_to_json(b.sched, b.gaps, b.exact), join_path(dir, "schedule.json"));
    write_text(join_path(dir, "gamma_energy.csv"), gamma_energy_csv(b.gaps));
    write_text(join_path(dir, "gamma_time.csv"), gamma_time_csv(b.sched));
    json cfg{{"command", "schedule"},
             {"instance", instance_path},
             {"mixer", mixer_json(comp.mixer)},
             {"samples", b.gaps.q_requested},
             {"seed", c.seed}};
    save_json(cfg, join_path(dir, "run_config.json"));
    std::cout << "levels = " << b.sched.levels.size() << ", T = " << fmt_g17(b.sched.total_time)
              << ", q_used = " << b.gaps.q_used << "/" << b.gaps.q_requested
              << (b.exact ? " (exact)" : "") << "\n";
    return 0;
}

// ---------------------------------------------------------------- run

struct RunOpts {
    std::string instance;
    std::string schedule_file;
    std::uint64_t samples = 0;
    int slices = 64;
    std::vector<int> slices_per_segment;
    int snapshot_every = 0;
    bool check_reference = false;
    int reference_steps = 512;
    int repeat = 1;
};

json run_once(const CommonOpts& c, const RunOpts& r, const std::string& dir,
              std::uint64_t seed) {
    Compiled comp = compile_from_file(r.instance, c);
    Spectrum spec = spectrum_for(comp);

    Schedule sched;
    std::optional<BuiltSchedule> built;
    if (!r.schedule_file.empty()) {
        sched = schedule_from_json(load_json(r.schedule_file));
    } else {
        built = build_from_instance(comp, r.samples, seed);
        sched = built->sched;
    }
    LayerPlan plan = r.slices_per_segment.empty() ? discretize(sched, r.slices)
                                                  : discretize(sched, r.slices_per_segment);

    EvolveOptions opts;
    opts.maximize = c.maximize;
    opts.snapshot_every = r.snapshot_every;
    EvolutionTrace trace = evolve_layer_plan(initial_state(comp.mixer), plan, spec, comp.mixer,
                                             opts);

    fs::create_directories(dir);
    if (built)
        save_json(schedule_to_json(built->sched, built->gaps, built->exact),
                  join_path(dir, "schedule.json"));
    save_json(layer_plan_to_json(plan), join_path(dir, "layer_plan.json"));
    write_text(join_path(dir, "trace.csv"), trace_csv(trace.snapshots, opts.tracked_ranks));
    write_text(join_path(dir, "final_distribution.csv"),
               distribution_csv(trace.final_state, spec, 0.0));
    write_text(join_path(dir, "final_distribution_display.csv"),
               distribution_csv(trace.final_state, spec, 1e-3));

    json summary = summary_json(trace.snapshots.back(), plan.total_time);
    summary["infeasible_mass"] = trace.snapshots.back().infeasible_mass;
    if (c.shots > 0) {
        std::vector<basis_t> shots = sample_shots(trace.final_state, c.shots, seed);
        basis_t best = shots.at(0);
        for (basis_t x : shots) {
            bool better = c.maximize ? spec.costs[x] > spec.costs[best]
                                     : spec.costs[x] < spec.costs[best];
            if (better) best = x;
        }
        summary["shots"] = c.shots;
        summary["best_cost"] = spec.costs[best];
        summary["best_state"] = bits_to_string(best, spec.n);
        summary["best_rank"] = spec.rank_of[best];
    }
    if (r.check_reference) {
        StateVector ref = evolve_reference(initial_state(comp.mixer), sched, spec, comp.mixer,
                                           r.reference_steps, c.maximize);
        summary["reference_fidelity"] = fidelity(trace.final_state, ref);
    }
    save_json(summary, join_path(dir, "summary.json"));

    json cfg{{"command", "run"},
             {"instance", r.instance},
             {"schedule", r.schedule_file.empty() ? json("generated") : json(r.schedule_file)},
             {"mixer", mixer_json(comp.mixer)},
             {"samples", built ? json(built->gaps.q_requested) : json(nullptr)},
             {"slices", r.slices_per_segment.empty() ? json(r.slices)
                                                     : json(r.slices_per_segment)},
             {"snapshot_every", r.snapshot_every},
             {"seed", seed},
             {"maximize", c.maximize},
             {"shots", c.shots}};
    save_json(cfg, join_path(dir, "run_config.json"));
    return summary;
}

int cmd_run(const CommonOpts& c, const RunOpts& r) {
    std::string dir = out_dir(c);
    if (r.repeat <= 1) {
        json summary = run_once(c, r, dir, c.seed);
        std::cout << "T = " << fmt_g17(summary["T"].get<double>())
                  << ", final quality = " << fmt_g17(summary["final_quality"].get<double>())
                  << ", P0 = " << fmt_g17(summary["P0"].get<double>())
                  << ", top5 = " << fmt_g17(summary["top5"].get<double>()) << "\n";
        if (summary.contains("best_cost"))
            std::cout << "best sampled cost = " << fmt_g17(summary["best_cost"].get<double>())
                      << " (" << summary["best_state"].get<std::string>() << ")\n";
        if (summary.contains("reference_fidelity"))
            std::cout << "reference fidelity = "
                      << fmt_g17(summary["reference_fidelity"].get<double>()) << "\n";
        return 0;
    }

    std::vector<std::future<json>> futures;
    for (int i = 0; i < r.repeat; ++i) {
        std::string rep_dir = join_path(dir, "rep" + std::to_string(i));
        std::uint64_t rep_seed = subsystem_seed(c.seed, "rep" + std::to_string(i));
        futures.push_back(std::async(std::launch::async, [&, rep_dir, rep_seed] {
            return run_once(c, r, rep_dir, rep_seed);
        }));
    }
    json per_rep = json::array();
    for (auto& f : futures) per_rep.push_back(f.get());

    json agg{{"repeats", r.repeat}, {"per_rep", per_rep}};
    for (const char* key : {"final_quality", "final_pr", "P0", "top5", "T"}) {
        double lo = per_rep[0][key].get<double>(), hi = lo, sum = 0.0;
        for (const auto& s : per_rep) {
            double v = s[key].get<double>();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        agg["mean"][key] = sum / r.repeat;
        agg["min"][key] = lo;
        agg["max"][key] = hi;
    }
    save_json(agg, join_path(dir, "aggregate.json"));
    std::cout << r.repeat << " repeats: mean final quality = "
              << fmt_g17(agg["mean"]["final_quality"].get<double>())
              << ", mean P0 = " << fmt_g17(agg["mean"]["P0"].get<double>())
              << ", mean top5 = " << fmt_g17(agg["mean"]["top5"].get<double>()) << "\n";
    return 0;
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
    std::string instance;
    std::string mode;
    int opt_iters = -1;  // -1: per-mode default
    std::string objective = "quality";
    std::vector<int> qaoa_p{1, 2, 3, 4};
    std::vector<std::uint64_t> q_list;
    int study_seeds = 5;
    int slices = 64;
};

json bundle_json(const MetricBundle& m) {
    return {{"quality", m.quality},
            {"participation_ratio", m.participation_ratio},
            {"P0", m.rank_probs.empty() ? 0.0 : m.rank_probs[0]},
            {"top5", m.top_fraction_prob},
            {"infeasible_mass", m.infeasible_mass}};
}

int cmd_compare_gqw(const CommonOpts& c, const CompareOpts& o, const std::string& dir) {
    Compiled comp = compile_from_file(o.instance, c);
    Spectrum spec = spectrum_for(comp);
    BuiltSchedule b = build_from_instance(comp, 0, c.seed);
    LayerPlan samba_plan = discretize(b.sched, o.slices);
    EvolveOptions opts;
    opts.maximize = c.maximize;
    StateVector init = initial_state(comp.mixer);
    EvolutionTrace samba = evolve_layer_plan(init, samba_plan, spec, comp.mixer, opts);

    int iters = o.opt_iters > 0 ? o.opt_iters : 100;
    TuneObjective kind =
        o.objective == "p0" ? TuneObjective::p_rank0 : TuneObjective::quality;
    int layer_count = static_cast<int>(samba_plan.total_slices());
    OptResult tuned = tune_gqw(spec, comp.mixer, b.sched.total_time, layer_count, iters, kind,
                               c.seed, opts);
    BezierParams best;
    std::copy(tuned.best_params.begin(), tuned.best_params.end(), best.v.begin());
    LayerPlan tuned_plan = bezier_layer_plan(best, b.sched.total_time, layer_count);
    EvolutionTrace gqw = evolve_layer_plan(init, tuned_plan, spec, comp.mixer, opts);

    write_text(join_path(dir, "samba_distribution.csv"),
               distribution_csv(samba.final_state, spec, 0.0));
    write_text(join_path(dir, "gqw_distribution.csv"),
               distribution_csv(gqw.final_state, spec, 0.0));
    json report{{"mode", "gqw"},
                {"T", b.sched.total_time},
                {"layers", layer_count},
                {"objective", o.objective},
                {"samba", bundle_json(samba.snapshots.back())},
                {"gqw_tuned", bundle_json(gqw.snapshots.back())},
                {"theta", tuned.best_params},
                {"evaluations", tuned.iterations_used}};
    save_json(report, join_path(dir, "comparison.json"));
    std::cout << "T = " << fmt_g17(b.sched.total_time)
              << ": samba quality = " << fmt_g17(samba.snapshots.back().quality)
              << ", tuned gqw quality = " << fmt_g17(gqw.snapshots.back().quality) << "\n";
    return 0;
}

int cmd_compare_qaoa(const CommonOpts& c, const CompareOpts& o, const std::string& dir) {
    Compiled comp = compile_from_file(o.instance, c);
    Spectrum spec = spectrum_for(comp);
    StateVector init = initial_state(comp.mixer);

    BuiltSchedule b = build_from_instance(comp, 0, c.seed);
    LayerPlan samba_plan = discretize(b.sched, o.slices);
    EvolveOptions opts;
    opts.maximize = c.maximize;
    EvolutionTrace samba = evolve_layer_plan(init, samba_plan, spec, comp.mixer, opts);
    double samba_r = approx_ratio_tilde(samba.final_state, spec);

    std::string angles_csv = "p,layer,gamma,beta\n";
    std::string results_csv = "p,depth,r_tilde\n";
    int iters = o.opt_iters > 0 ? o.opt_iters : 3000;
    json rows = json::array();
    for (int p : o.qaoa_p) {
        OptResult r = tune_qaoa(spec, comp.mixer, p, iters,
                                subsystem_seed(c.seed, "qaoa-p" + std::to_string(p)));
        double r_tilde = -r.best_value;
        results_csv += std::to_string(p) + "," + std::to_string(p) + "," + fmt_g17(r_tilde) +
                       "\n";
        for (int k = 0; k < p; ++k)
            angles_csv += std::to_string(p) + "," + std::to_string(k) + "," +
                          fmt_g17(r.best_params[2 * k]) + "," + fmt_g17(r.best_params[2 * k + 1]) +
                          "\n";
        rows.push_back({{"p", p},
                        {"depth", p},
                        {"r_tilde", r_tilde},
                        {"evaluations", r.iterations_used}});
        std::cout << "qaoa p = " << p << ": r_tilde = " << fmt_g17(r_tilde) << "\n";
    }
    std::string samba_csv = "layer,gamma,beta\n";
    for (std::size_t k = 0; k < samba_plan.layers.size(); ++k)
        samba_csv += std::to_string(k) + "," + fmt_g17(samba_plan.layers[k].dt) + "," +
                     fmt_g17(samba_plan.layers[k].theta) + "\n";

    write_text(join_path(dir, "qaoa_results.csv"), results_csv);
    write_text(join_path(dir, "qaoa_angles.csv"), angles_csv);
    write_text(join_path(dir, "samba_angles.csv"), samba_csv);
    json report{{"mode", "qaoa"},
                {"qaoa", rows},
                {"samba",
                 {{"r_tilde", samba_r},
                  {"T", b.sched.total_time},
                  {"layers", samba_plan.total_slices()}}}};
    save_json(report, join_path(dir, "comparison.json"));
    std::cout << "samba r_tilde = " << fmt_g17(samba_r) << " at " << samba_plan.total_slices()
              << " layers\n";
    return 0;
}

int cmd_compare_sampling(const CommonOpts& c, const CompareOpts& o, const std::string& dir) {
    Compiled comp = compile_from_file(o.instance, c);
    Spectrum spec = spectrum_for(comp);
    StateVector init = initial_state(comp.mixer);
    std::uint64_t n = static_cast<std::uint64_t>(comp.cp.poly.n);
    std::uint64_t cap = feasible_count(comp.mixer);

    std::vector<std::uint64_t> qs = o.q_list;
    if (qs.empty()) qs = {n, n * n, n * n * n};
    for (auto& q : qs) q = std::min(q, cap);
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

    EvolveOptions opts;
    opts.maximize = c.maximize;
    std::string runs_csv = "q,seed_index,quality,participation_ratio,P0,top5,T\n";
    std::string mean_csv = "q,quality,participation_ratio,P0,top5,T\n";
    json rows = json::array();
    for (std::uint64_t q : qs) {
        double sq = 0, spr = 0, sp0 = 0, st5 = 0, st = 0;
        for (int s = 0; s < o.study_seeds; ++s) {
            std::uint64_t seed =
                subsystem_seed(c.seed, "study-" + std::to_string(q) + "-" + std::to_string(s));
            BuiltSchedule b = build_from_instance(comp, q, seed);
            LayerPlan plan = discretize(b.sched, o.slices);
            EvolutionTrace tr = evolve_layer_plan(init, plan, spec, comp.mixer, opts);
            const MetricBundle& m = tr.snapshots.back();
            double p0 = m.rank_probs.empty() ? 0.0 : m.rank_probs[0];
            runs_csv += std::to_string(q) + "," + std::to_string(s) + "," + fmt_g17(m.quality) +
                        "," + fmt_g17(m.participation_ratio) + "," + fmt_g17(p0) + "," +
                        fmt_g17(m.top_fraction_prob) + "," + fmt_g17(plan.total_time) + "\n";
            sq += m.quality;
            spr += m.participation_ratio;
            sp0 += p0;
            st5 += m.top_fraction_prob;
            st += plan.total_time;
        }
        double k = o.study_seeds;
        mean_csv += std::to_string(q) + "," + fmt_g17(sq / k) + "," + fmt_g17(spr / k) + "," +
                    fmt_g17(sp0 / k) + "," + fmt_g17(st5 / k) + "," + fmt_g17(st / k) + "\n";
        rows.push_back({{"q", q},
                        {"quality", sq / k},
                        {"participation_ratio", spr / k},
                        {"P0", sp0 / k},
                        {"top5", st5 / k},
                        {"T", st / k}});
        std::cout << "q = " << q << ": mean quality = " << fmt_g17(sq / k)
                  << ", mean P0 = " << fmt_g17(sp0 / k) << "\n";
    }
    write_text(join_path(dir, "sampling_study_runs.csv"), runs_csv);
    write_text(join_path(dir, "sampling_study.csv"), mean_csv);
    save_json(json{{"mode", "sampling-study"}, {"seeds", o.study_seeds}, {"rows", rows}},
              join_path(dir, "comparison.json"));
    return 0;
}

int cmd_compare(const CommonOpts& c, const CompareOpts& o) {
    std::string dir = out_dir(c);
    json cfg{{"command", "compare"}, {"instance", o.instance}, {"mode", o.mode},
             {"seed", c.seed},       {"slices", o.slices},     {"maximize", c.maximize}};
    if (o.mode == "qaoa") cfg["qaoa_p"] = o.qaoa_p;
    if (o.mode == "sampling-study") cfg["study_seeds"] = o.study_seeds;
    save_json(cfg, join_path(dir, "run_config.json"));
    if (o.mode == "gqw") return cmd_compare_gqw(c, o, dir);
    if (o.mode == "qaoa") return cmd_compare_qaoa(c, o, dir);
    return cmd_compare_sampling(c, o, dir);
}

// ---------------------------------------------------------------- qasm

struct QasmOpts {
    std::string instance;
    std::string schedule_file;
    std::uint64_t samples = 0;
    int slices = 64;
};

int cmd_qasm(const CommonOpts& c, const QasmOpts& o) {
    Compiled comp = compile_from_file(o.instance, c);
    if (comp.mixer.kind != MixerKind::x_hypercube)
        throw UsageError("gate export supports the x mixer only");
    Schedule sched;
    if (!o.schedule_file.empty())
        sched = schedule_from_json(load_json(o.schedule_file));
    else
        sched = build_from_instance(comp, o.samples, c.seed).sched;
    LayerPlan plan = discretize(sched, o.slices);
    QasmStats st;
    std::string text = emit_qasm(comp.cp.poly, plan, c.maximize, &st);
    std::string path = c.out.empty() ? "circuit.qasm" : c.out;
    write_text(path, text);
    std::cout << "pbar = " << st.layers << " layers, depth = 1 + " << st.layers << "*(1 + "
              << st.cost_depth << "), wrote " << path << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"sampled guided quantum walk toolkit"};
    app.require_subcommand(1);

    CommonOpts c;
    app.add_option("--seed", c.seed, "base seed for all randomness");
    app.add_option("--out", c.out, "output file or directory");
    app.add_flag("--maximize", c.maximize, "walk toward the highest cost instead");
    app.add_option("--shots", c.shots, "measurements to draw from the final state");
    app.add_option("--mixer", c.mixer, "auto, x, or xy")
        ->check(CLI::IsMember({"auto", "x", "xy"}));
    app.add_option("--hamming-weight", c.hamming_weight, "weight class for the xy mixer");

    GenOpts g;
    auto* gen = app.add_subcommand("gen", "generate a problem instance file");
    gen->fallthrough();
    gen->require_subcommand(1);
    auto add_graph_opts = [](CLI::App* cmd, GenGraphOpts& go) {
        cmd->add_option("--n", go.n, "vertices");
        cmd->add_option("--p-edge", go.p_edge, "edge probability (er model)");
        cmd->add_flag("--weighted", go.weighted, "uniform random edge weights (er model)");
        cmd->add_option("--w-range", go.w_range, "edge weight range")->expected(2);
        cmd->add_option("--model", go.model, "er or unit-disk")
            ->check(CLI::IsMember({"er", "unit-disk"}));
        cmd->add_option("--radius", go.radius, "connection radius (unit-disk model)");
        cmd->add_option("--box", go.box, "box side (unit-disk model)");
        cmd->fallthrough();
    };
    add_graph_opts(gen->add_subcommand("maxcut", "random graph cut instance"), g.maxcut);
    auto* gmis = gen->add_subcommand("mis", "independent set instance");
    add_graph_opts(gmis, g.mis);
    gmis->add_option("--lambda", g.mis_lambda, "independence penalty (default rule if unset)");
    auto* gpf = gen->add_subcommand("portfolio", "mean-variance selection instance");
    gpf->fallthrough();
    gpf->add_option("--n", g.pf_n, "assets");
    gpf->add_option("--k", g.pf_k, "assets to pick (default n/2)");
    gpf->add_option("--lambda", g.pf_lambda, "risk weight");
    gpf->add_option("--assets", g.pf_assets, "load mu/sigma from a text file")
        ->check(CLI::ExistingFile);
    auto* glabs = gen->add_subcommand("labs", "low-autocorrelation binary sequence");
    glabs->fallthrough();
    glabs->add_option("--n", g.labs_n, "sequence length");
    auto* gsat = gen->add_subcommand("maxksat", "random k-sat maximization instance");
    gsat->fallthrough();
    gsat->add_option("--n", g.sat_n, "variables");
    gsat->add_option("--k", g.sat_k, "literals per clause");
    gsat->add_option("--alpha", g.sat_alpha, "clause density m = floor(alpha*n)");
    auto* gtsp = gen->add_subcommand("tsp", "random symmetric tour instance");
    gtsp->fallthrough();
    gtsp->add_option("--cities", g.tsp_cities, "number of cities");
    gtsp->add_option("--dist-range", g.tsp_range, "distance range")->expected(2);

    std::string s_instance;
    std::uint64_t s_samples = 0;
    auto* sch = app.add_subcommand("schedule", "sample gaps and build the hopping schedule");
    sch->fallthrough();
    sch->add_option("--instance", s_instance, "instance JSON")->required()
        ->check(CLI::ExistingFile);
    sch->add_option("--samples", s_samples, "states to sample (default n^2)");

    RunOpts r;
    auto* run = app.add_subcommand("run", "evolve the walk and write metrics");
    run->fallthrough();
    run->add_option("--instance", r.instance, "instance JSON")->required()
        ->check(CLI::ExistingFile);
    run->add_option("--schedule", r.schedule_file, "schedule JSON (built internally if absent)")
        ->check(CLI::ExistingFile);
    run->add_option("--samples", r.samples, "states to sample (default n^2)");
    run->add_option("--slices", r.slices, "uniform trotter slices per segment");
    run->add_option("--slices-per-segment", r.slices_per_segment, "per-segment slice counts");
    run->add_option("--snapshot-every", r.snapshot_every,
                    "metric cadence in layers (0: first and last)");
    run->add_flag("--check-reference", r.check_reference,
                  "integrate densely and report fidelity");
    run->add_option("--reference-steps", r.reference_steps, "dense steps per segment");
    run->add_option("--repeat", r.repeat, "independent repeats in rep<k> directories");

    CompareOpts o;
    auto* cmp = app.add_subcommand("compare", "baseline comparisons and sweeps");
    cmp->fallthrough();
    cmp->add_option("--instance", o.instance, "instance JSON")->required()
        ->check(CLI::ExistingFile);
    cmp->add_option("--mode", o.mode, "gqw, qaoa, or sampling-study")->required()
        ->check(CLI::IsMember({"gqw", "qaoa", "sampling-study"}));
    cmp->add_option("--opt-iters", o.opt_iters, "optimizer budget (default 100 gqw, 3000 qaoa)");
    cmp->add_option("--objective", o.objective, "gqw tuning objective")
        ->check(CLI::IsMember({"quality", "p0"}));
    cmp->add_option("--qaoa-p", o.qaoa_p, "depths to sweep in qaoa mode");
    cmp->add_option("--q-list", o.q_list, "sample counts (default n, n^2, n^3)");
    cmp->add_option("--study-seeds", o.study_seeds, "seeds per sample count");
    cmp->add_option("--slices", o.slices, "uniform trotter slices per segment");

    QasmOpts qa;
    auto* qasm = app.add_subcommand("qasm", "lower the layer plan to a gate circuit");
    qasm->fallthrough();
    qasm->add_option("--instance", qa.instance, "instance JSON")->required()
        ->check(CLI::ExistingFile);
    qasm->add_option("--schedule", qa.schedule_file, "schedule JSON (built internally if absent)")
        ->check(CLI::ExistingFile);
    qasm->add_option("--samples", qa.samples, "states to sample (default n^2)");
    qasm->add_option("--slices", qa.slices, "uniform trotter slices per segment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(gen)) {
            for (CLI::App* fam : gen->get_subcommands()) return cmd_gen(c, g, fam->get_name());
            throw UsageError("gen needs a problem family");
        }
        if (app.got_subcommand(sch)) return cmd_schedule(c, s_instance, s_samples);
        if (app.got_subcommand(run)) return cmd_run(c, r);
        if (app.got_subcommand(cmp)) return cmd_compare(c, o);
        return cmd_qasm(c, qa);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace gqw
