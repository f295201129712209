#include "gqwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gqw {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json poly_to_json(const Polynomial& p) {
    json terms = json::array();
    for (const Term& t : p.terms) {
        json vars = json::array();
        for (int i = 0; i < p.n; ++i)
            if (get_bit(t.mask, i)) vars.push_back(i);
        terms.push_back({{"vars", vars}, {"coeff", t.coeff}});
    }
    return {{"n", p.n}, {"terms", terms}};
}

Polynomial poly_from_json(const json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::pair<std::vector<int>, double>> terms;
    for (const auto& t : j.at("terms"))
        terms.emplace_back(t.at("vars").get<std::vector<int>>(), t.at("coeff").get<double>());
    return poly_from_terms(n, terms);
}

namespace {

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.u, e.v, e.w});
    json out{{"n", g.n}, {"edges", edges}};
    if (!g.vertex_weights.empty()) out["vertex_weights"] = g.vertex_weights;
    return out;
}

Graph graph_from_json(const json& j) {
    Graph g;
    g.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges"))
        g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    if (j.contains("vertex_weights"))
        g.vertex_weights = j.at("vertex_weights").get<std::vector<double>>();
    return g;
}

}  // namespace

json instance_to_json(const ProblemInstance& inst) {
    json j{{"family", family_name(inst.family)}};
    switch (inst.family) {
        case Family::maxcut:
            j["graph"] = graph_to_json(inst.graph);
            break;
        case Family::mis:
            j["graph"] = graph_to_json(inst.graph);
            if (inst.mis_lambda) j["lambda"] = *inst.mis_lambda;
            break;
        case Family::portfolio: {
            json sigma = json::array();
            for (const auto& [a, b, v] : inst.portfolio.sigma) sigma.push_back({a, b, v});
            j["n"] = inst.portfolio.n;
            j["k"] = inst.portfolio.k;
            j["lambda"] = inst.portfolio.lambda;
            j["mu"] = inst.portfolio.mu;
            j["sigma"] = sigma;
            break;
        }
        case Family::labs:
            j["n"] = inst.labs_n;
            break;
        case Family::maxksat:
            j["n"] = inst.sat.n;
            j["k"] = inst.sat.k;
            j["clauses"] = inst.sat.clauses;
            break;
        case Family::tsp:
            j["cities"] = inst.tsp.m;
            j["w"] = inst.tsp.w;
            j["mu"] = inst.tsp.mu;
            j["lambda"] = inst.tsp.lambda;
            j["gamma"] = inst.tsp.gamma;
            break;
    }
    return j;
}

ProblemInstance instance_from_json(const json& j) {
    ProblemInstance inst;
    inst.family = family_from_name(j.at("family").get<std::string>());
    switch (inst.family) {
        case Family::maxcut:
            inst.graph = graph_from_json(j.at("graph"));
            break;
        case Family::mis:
            inst.graph = graph_from_json(j.at("graph"));
            if (j.contains("lambda")) inst.mis_lambda = j.at("lambda").get<double>();
            break;
        case Family::portfolio: {
            PortfolioInstance& p = inst.portfolio;
            p.n = j.at("n").get<int>();
            p.k = j.at("k").get<int>();
            p.lambda = j.at("lambda").get<double>();
            p.mu = j.at("mu").get<std::vector<double>>();
            for (const auto& s : j.at("sigma"))
                p.sigma.emplace_back(s.at(0).get<int>(), s.at(1).get<int>(),
                                     s.at(2).get<double>());
            break;
        }
        case Family::labs:
            inst.labs_n = j.at("n").get<int>();
            break;
        case Family::maxksat:
            inst.sat.n = j.at("n").get<int>();
            inst.sat.k = j.at("k").get<int>();
            inst.sat.clauses = j.at("clauses").get<std::vector<std::vector<int>>>();
            break;
        case Family::tsp:
            inst.tsp.m = j.at("cities").get<int>();
            inst.tsp.w = j.at("w").get<std::vector<std::vector<double>>>();
            inst.tsp.mu = j.value("mu", 1.0);
            inst.tsp.lambda = j.value("lambda", 0.0);
            inst.tsp.gamma = j.value("gamma", 0.0);
            break;
    }
    return inst;
}

json schedule_to_json(const Schedule& s, const SampledGaps& gaps, bool exact) {
    json entries = json::array();
    for (const GapEntry& e : gaps.entries)
        entries.push_back({{"energy", e.energy}, {"mean_gap", e.mean()}, {"count", e.count}});
    return {{"levels", s.levels},
            {"durations", s.durations},
            {"node_times", s.node_times},
            {"total_time", s.total_time},
            {"sampling",
             {{"q", gaps.q_requested}, {"q_used", gaps.q_used}, {"exact", exact},
              {"entries", entries}}}};
}

Schedule schedule_from_json(const json& j) {
    Schedule s;
    s.levels = j.at("levels").get<std::vector<double>>();
    s.durations = j.at("durations").get<std::vector<double>>();
    s.total_time = j.at("total_time").get<double>();
    if (j.contains("node_times")) {
        s.node_times = j.at("node_times").get<std::vector<double>>();
    } else {
        s.node_times.assign(1, 0.0);
        for (double d : s.durations) s.node_times.push_back(s.node_times.back() + d);
    }
    if (s.levels.size() != s.durations.size() ||
        s.node_times.size() != s.levels.size() + 1)
        throw std::invalid_argument("inconsistent schedule file");
    return s;
}

json layer_plan_to_json(const LayerPlan& plan) {
    json layers = json::array();
    for (const Layer& l : plan.layers) layers.push_back({{"dt", l.dt}, {"theta", l.theta}});
    return {{"layers", layers},
            {"slices_per_segment", plan.slices_per_segment},
            {"total_time", plan.total_time}};
}

json summary_json(const MetricBundle& final_metrics, double total_time) {
    return {{"final_quality", final_metrics.quality},
            {"final_pr", final_metrics.participation_ratio},
            {"P0", final_metrics.rank_probs.empty() ? 0.0 : final_metrics.rank_probs[0]},
            {"top5", final_metrics.top_fraction_prob},
            {"T", total_time}};
}

std::string trace_csv(const std::vector<MetricBundle>& snapshots, int tracked_ranks) {
    std::string out = "t,quality,participation_ratio";
    for (int r = 0; r < tracked_ranks; ++r) out += ",P_rank" + std::to_string(r);
    out += ",P_top5pct\n";
    for (const MetricBundle& m : snapshots) {
        out += fmt_g17(m.t) + "," + fmt_g17(m.quality) + "," + fmt_g17(m.participation_ratio);
        for (int r = 0; r < tracked_ranks; ++r)
            out += "," + fmt_g17(r < static_cast<int>(m.rank_probs.size()) ? m.rank_probs[r] : 0.0);
        out += "," + fmt_g17(m.top_fraction_prob) + "\n";
    }
    return out;
}

std::string distribution_csv(const StateVector& s, const Spectrum& spec, double threshold) {
    std::vector<double> probs = ranking_probabilities(s, spec);
    std::string out = "rank,cost,probability\n";
    for (std::size_t r = 0; r < probs.size(); ++r) {
        if (threshold > 0.0 && probs[r] < threshold) continue;
        out += std::to_string(r) + "," + fmt_g17(spec.rank_cost[r]) + "," + fmt_g17(probs[r]) +
               "\n";
    }
    return out;
}

std::string gamma_energy_csv(const SampledGaps& gaps) {
    std::string out = "energy,gamma\n";
    for (const GapEntry& e : gaps.entries)
        out += fmt_g17(e.energy) + "," + fmt_g17(e.mean()) + "\n";
    return out;
}

std::string gamma_time_csv(const Schedule& s) {
    std::string out = "t,gamma\n";
    for (std::size_t i = 0; i < s.levels.size(); ++i)
        out += fmt_g17(s.node_times[i]) + "," + fmt_g17(s.levels[i]) + "\n";
    out += fmt_g17(s.node_times.back()) + ",0\n";
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    if (!f) throw std::runtime_error("short write to " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void save_json(const json& j, const std::string& path) { write_text(path, j.dump(2) + "\n"); }

json load_json(const std::string& path) { return json::parse(read_text(path)); }

}  // namespace gqw
