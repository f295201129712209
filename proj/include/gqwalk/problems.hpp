#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gqwalk/polynomial.hpp"

namespace gqw {

struct Edge {
    int u = 0, v = 0;
    double w = 1.0;
};

struct Graph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<double> vertex_weights;  // empty means all 1
};

Graph gen_erdos_renyi(int n, double p_edge, bool weighted, double w_lo, double w_hi,
                      std::uint64_t seed);
// Random points in a square box; vertices closer than radius are connected and
// vertex weights follow 1 + 10 * deg / max_deg (all 1 when there are no edges).
Graph gen_unit_disk(int n, double radius, double box, std::uint64_t seed);

Polynomial maxcut_poly(const Graph& g);

double mis_default_lambda(const Graph& g);
Polynomial mis_poly(const Graph& g, std::optional<double> lambda = std::nullopt);

struct PortfolioInstance {
    int n = 0;
    int k = 0;  // target number of selected assets
    double lambda = 0.5;
    std::vector<double> mu;
    std::vector<std::tuple<int, int, double>> sigma;  // i < j
};

PortfolioInstance gen_portfolio(int n, int k, double lambda, std::uint64_t seed);
PortfolioInstance load_portfolio(const std::string& path, int k, double lambda);
Polynomial portfolio_poly(const PortfolioInstance& p);

Polynomial labs_poly(int n);

struct SatInstance {
    int n = 0;
    int k = 0;
    // DIMACS-style signed 1-based literals, k per clause.
    std::vector<std::vector<int>> clauses;
};

SatInstance gen_maxksat(int n, int k, double alpha, std::uint64_t seed);
Polynomial maxksat_poly(const SatInstance& s);

struct TspInstance {
    int m = 0;                           // cities
    std::vector<std::vector<double>> w;  // symmetric distance matrix
    double mu = 1.0;
    double lambda = 0.0;  // invalid-city penalty; 0 means use the default 2*mu*max(w)
    double gamma = 0.0;   // duplicate-city penalty; same default
};

TspInstance gen_tsp(int m, double w_lo, double w_hi, std::uint64_t seed);
int tsp_bits_per_city(int m);
int tsp_num_qubits(int m);
Polynomial tsp_poly(const TspInstance& t);
basis_t tsp_encode(int m, const std::vector<int>& route);
std::optional<std::vector<int>> tsp_decode(int m, basis_t x);

enum class SymmetryKind { none, global_bit_flip };

struct SymmetryTag {
    SymmetryKind kind = SymmetryKind::none;
    basis_t mask = 0;

    basis_t mate(basis_t x) const {
        return kind == SymmetryKind::global_bit_flip ? (x ^ mask) : x;
    }
    bool active() const { return kind != SymmetryKind::none; }
};

SymmetryTag bit_flip_symmetry(int n);
SymmetryTag no_symmetry();

enum class Family { maxcut, mis, portfolio, labs, maxksat, tsp };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

struct ProblemInstance {
    Family family = Family::maxcut;
    Graph graph;                       // maxcut, mis
    std::optional<double> mis_lambda;  // empty = default rule
    PortfolioInstance portfolio;
    int labs_n = 0;
    SatInstance sat;
    TspInstance tsp;
};

struct CompiledProblem {
    Polynomial poly;
    SymmetryTag symmetry;
    bool constrained = false;  // true when the natural mixer is the XY ring
    int default_hamming_weight = -1;
};

CompiledProblem compile_problem(const ProblemInstance& inst);

}  // namespace gqw
