#include "gqwalk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gqwalk/rng.hpp"

namespace gqw {

namespace {

void check_graph(const Graph& g) {
    if (g.n < 1 || g.n > k_max_vars) throw std::invalid_argument("bad graph size");
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n || e.u == e.v)
            throw std::invalid_argument("bad edge");
    }
    if (!g.vertex_weights.empty() && g.vertex_weights.size() != static_cast<std::size_t>(g.n))
        throw std::invalid_argument("vertex weight table size mismatch");
}

double vweight(const Graph& g, int i) {
    return g.vertex_weights.empty() ? 1.0 : g.vertex_weights[i];
}

}  // namespace

Graph gen_erdos_renyi(int n, double p_edge, bool weighted, double w_lo, double w_hi,
                      std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("erdos-renyi needs n >= 2");
    if (p_edge < 0.0 || p_edge > 1.0) throw std::invalid_argument("edge probability");
    Graph g;
    g.n = n;
    Rng rng(subsystem_seed(seed, "gen-er"));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.real() < p_edge) {
                double w = weighted ? rng.real(w_lo, w_hi) : 1.0;
                g.edges.push_back({i, j, w});
            }
    return g;
}

Graph gen_unit_disk(int n, double radius, double box, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("unit disk needs n >= 2");
    if (radius <= 0.0 || box <= 0.0) throw std::invalid_argument("bad geometry");
    Graph g;
    g.n = n;
    Rng rng(subsystem_seed(seed, "gen-ud"));
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = rng.real(0.0, box);
        ys[i] = rng.real(0.0, box);
    }
    std::vector<int> deg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
            if (std::sqrt(dx * dx + dy * dy) <= radius) {
                g.edges.push_back({i, j, 1.0});
                ++deg[i];
                ++deg[j];
            }
        }
    int max_deg = *std::max_element(deg.begin(), deg.end());
    g.vertex_weights.assign(n, 1.0);
    if (max_deg > 0)
        for (int i = 0; i < n; ++i)
            g.vertex_weights[i] = 1.0 + 10.0 * deg[i] / max_deg;
    return g;
}

Polynomial maxcut_poly(const Graph& g) {
    check_graph(g);
    if (g.edges.empty()) throw std::invalid_argument("max-cut needs at least one edge");
    Polynomial c = Polynomial::zero(g.n);
    for (const auto& e : g.edges) {
        // -w (x_u + x_v - 2 x_u x_v)
        Polynomial t = poly_from_terms(
            g.n, {{{e.u}, -e.w}, {{e.v}, -e.w}, {{e.u, e.v}, 2.0 * e.w}});
        c = poly_add(c, t);
    }
    return c;
}

double mis_default_lambda(const Graph& g) {
    check_graph(g);
    double best = 0.0;
    for (const auto& e : g.edges)
        best = std::max(best, vweight(g, e.u) + vweight(g, e.v));
    return g.edges.empty() ? 1.0 : best + 1.0;
}

Polynomial mis_poly(const Graph& g, std::optional<double> lambda) {
    check_graph(g);
    double lam = lambda.value_or(mis_default_lambda(g));
    Polynomial c = Polynomial::zero(g.n);
    for (int i = 0; i < g.n; ++i)
        c = poly_add(c, poly_from_terms(g.n, {{{i}, -vweight(g, i)}}));
    for (const auto& e : g.edges)
        c = poly_add(c, poly_from_terms(g.n, {{{e.u, e.v}, lam}}));
    return c;
}

PortfolioInstance gen_portfolio(int n, int k, double lambda, std::uint64_t seed) {
    if (n < 2 || n > k_max_vars) throw std::invalid_argument("bad portfolio size");
    if (k < 0 || k > n) throw std::invalid_argument("bad selection size");
    PortfolioInstance p;
    p.n = n;
    p.k = k;
    p.lambda = lambda;
    Rng rng(subsystem_seed(seed, "gen-portfolio"));
    p.mu.resize(n);
    for (int i = 0; i < n; ++i) p.mu[i] = rng.real(0.5, 1.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p.sigma.push_back({i, j, rng.real(-1.0, 1.0)});
    return p;
}

// Text format: first line n, then n lines "i mu_i", then lines "i j sigma_ij".
PortfolioInstance load_portfolio(const std::string& path, int k, double lambda) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open asset file: " + path);
    PortfolioInstance p;
    p.k = k;
    p.lambda = lambda;
    std::string line;
    int read_mu = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (p.n == 0) {
            if (ls >> p.n) {
                if (p.n < 2 || p.n > k_max_vars) throw std::runtime_error("bad asset count");
                p.mu.assign(p.n, 0.0);
            }
            continue;
        }
        if (read_mu < p.n) {
            int i;
            double m;
            if (ls >> i >> m) {
                if (i < 0 || i >= p.n) throw std::runtime_error("bad asset index");
                p.mu[i] = m;
                ++read_mu;
            }
            continue;
        }
        int i, j;
        double s;
        if (ls >> i >> j >> s) {
            if (i < 0 || j < 0 || i >= p.n || j >= p.n || i == j)
                throw std::runtime_error("bad covariance entry");
            if (i > j) std::swap(i, j);
            p.sigma.push_back({i, j, s});
        }
    }
    if (p.n == 0 || read_mu < p.n) throw std::runtime_error("truncated asset file");
    if (p.k < 0 || p.k > p.n) throw std::runtime_error("bad selection size");
    return p;
}

Polynomial portfolio_poly(const PortfolioInstance& p) {
    if (p.n < 2 || p.mu.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("bad portfolio instance");
    Polynomial c = Polynomial::zero(p.n);
    for (const auto& [i, j, s] : p.sigma) {
        if (i < 0 || j < 0 || i >= p.n || j >= p.n || i == j)
            throw std::invalid_argument("bad covariance entry");
        c = poly_add(c, poly_from_terms(p.n, {{{i, j}, p.lambda * s}}));
    }
    for (int i = 0; i < p.n; ++i)
        c = poly_add(c, poly_from_terms(p.n, {{{i}, -p.mu[i]}}));
    return c;
}

Polynomial labs_poly(int n) {
    if (n < 2 || n > k_max_vars) throw std::invalid_argument("bad sequence length");
    Polynomial c = Polynomial::zero(n);
    for (int k = 1; k < n; ++k) {
        Polynomial a = Polynomial::zero(n);
        for (int i = 0; i + k < n; ++i) {
            // s_i s_{i+k} with s = 1 - 2x
            a = poly_add(a, poly_from_terms(
                                n, {{{i, i + k}, 4.0}, {{i}, -2.0}, {{i + k}, -2.0}, {{}, 1.0}}));
        }
        c = poly_add(c, poly_mul(a, a));
    }
    return c;
}

SatInstance gen_maxksat(int n, int k, double alpha, std::uint64_t seed) {
    if (n < 1 || n > k_max_vars) throw std::invalid_argument("bad variable count");
    if (k < 1 || k > n) throw std::invalid_argument("clause width must be in [1, n]");
    int m = static_cast<int>(std::floor(alpha * n));
    if (m < 1) throw std::invalid_argument("clause ratio yields an empty formula");
    SatInstance s;
    s.n = n;
    s.k = k;
    Rng rng(subsystem_seed(seed, "gen-sat"));
    std::vector<int> vars(n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) vars[i] = i;
        std::vector<int> clause;
        for (int t = 0; t < k; ++t) {
            // uniform k-subset via partial shuffle
            std::size_t r = t + rng.below(n - t);
            std::swap(vars[t], vars[r]);
            clause.push_back(vars[t] + 1);
        }
        std::sort(clause.begin(), clause.end());
        for (int& lit : clause)
            if (rng.below(2)) lit = -lit;
        s.clauses.push_back(std::move(clause));
    }
    return s;
}

Polynomial maxksat_poly(const SatInstance& s) {
    if (s.n < 1 || s.n > k_max_vars) throw std::invalid_argument("bad sat instance");
    Polynomial c = Polynomial::zero(s.n);
    for (const auto& clause : s.clauses) {
        // unsatisfied indicator: product over literals of (1 - l_i)
        Polynomial unsat = Polynomial::constant(s.n, 1.0);
        for (int lit : clause) {
            int v = std::abs(lit) - 1;
            if (v < 0 || v >= s.n) throw std::invalid_argument("literal out of range");
            Polynomial f = lit > 0 ? poly_from_terms(s.n, {{{}, 1.0}, {{v}, -1.0}})
                                   : Polynomial::variable(s.n, v);
            unsat = poly_mul(unsat, f);
        }
        // C -= S_j = 1 - unsat
        c = poly_add(c, poly_add(Polynomial::constant(s.n, -1.0), unsat));
    }
    return c;
}

TspInstance gen_tsp(int m, double w_lo, double w_hi, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("tsp needs at least 2 cities");
    TspInstance t;
    t.m = m;
    t.w.assign(m, std::vector<double>(m, 0.0));
    Rng rng(subsystem_seed(seed, "gen-tsp"));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) t.w[i][j] = t.w[j][i] = rng.real(w_lo, w_hi);
    return t;
}

int tsp_bits_per_city(int m) {
    if (m < 2) throw std::invalid_argument("tsp needs at least 2 cities");
    int b = 1;
    while ((1 << b) < m) ++b;
    return b;
}

int tsp_num_qubits(int m) { return m * tsp_bits_per_city(m); }

namespace {

// Sequence i, city-code bit j (j = 0 is the least significant code bit); the
// global variable order prints each code most significant bit first.
int tsp_var(int m, int i, int j) {
    int b = tsp_bits_per_city(m);
    return i * b + (b - 1 - j);
}

// x_v if bit_value else (1 - x_v)
Polynomial match_bit(int n, int v, int bit_value) {
    return bit_value ? Polynomial::variable(n, v)
                     : poly_from_terms(n, {{{}, 1.0}, {{v}, -1.0}});
}

// 1 when sequence i encodes exactly the given city code
Polynomial seq_equals_const(int n, int m, int i, int city) {
    int b = tsp_bits_per_city(m);
    Polynomial p = Polynomial::constant(n, 1.0);
    for (int j = 0; j < b; ++j)
        p = poly_mul(p, match_bit(n, tsp_var(m, i, j), (city >> j) & 1));
    return p;
}

// 1 when sequences i1 and i2 encode the same city
Polynomial seq_equals_seq(int n, int m, int i1, int i2) {
    int b = tsp_bits_per_city(m);
    Polynomial p = Polynomial::constant(n, 1.0);
    for (int j = 0; j < b; ++j) {
        int a = tsp_var(m, i1, j), c = tsp_var(m, i2, j);
        // 1 - (x_a - x_c)^2 = 1 - x_a - x_c + 2 x_a x_c
        p = poly_mul(p, poly_from_terms(n, {{{}, 1.0}, {{a}, -1.0}, {{c}, -1.0}, {{a, c}, 2.0}}));
    }
    return p;
}

// Penalty that fires exactly on the codes above m-1; built from the zero bits
// of m-1: code > m-1 iff some zero bit of m-1 is set while all higher bits
// match m-1.
Polynomial seq_invalid(int n, int m, int i) {
    int b = tsp_bits_per_city(m);
    int top = m - 1;
    Polynomial p = Polynomial::zero(n);
    for (int j = 0; j < b; ++j) {
        if ((top >> j) & 1) continue;
        Polynomial t = Polynomial::variable(n, tsp_var(m, i, j));
        for (int k = j + 1; k < b; ++k)
            t = poly_mul(t, match_bit(n, tsp_var(m, i, k), (top >> k) & 1));
        p = poly_add(p, t);
    }
    return p;
}

}  // namespace

Polynomial tsp_poly(const TspInstance& t) {
    int m = t.m;
    if (m < 2) throw std::invalid_argument("tsp needs at least 2 cities");
    if (t.w.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("distance matrix size mismatch");
    double wmax = 0.0;
    for (int i = 0; i < m; ++i) {
        if (t.w[i].size() != static_cast<std::size_t>(m))
            throw std::invalid_argument("distance matrix size mismatch");
        for (int j = 0; j < m; ++j) wmax = std::max(wmax, std::abs(t.w[i][j]));
    }
    int n = tsp_num_qubits(m);
    if (n > k_max_vars)
        throw std::invalid_argument("tsp instance needs " + std::to_string(n) + " qubits");
    double lam = t.lambda > 0.0 ? t.lambda : 2.0 * t.mu * wmax;
    double gam = t.gamma > 0.0 ? t.gamma : 2.0 * t.mu * wmax;

    Polynomial c = Polynomial::zero(n);
    for (int i = 0; i < m; ++i)
        c = poly_add(c, poly_scale(seq_invalid(n, m, i), lam));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && i < j)
                c = poly_add(c, poly_scale(seq_equals_seq(n, m, i, j), 2.0 * gam));
    // tour length, consecutive positions wrap around
    std::vector<std::vector<Polynomial>> at(m);
    for (int pos = 0; pos < m; ++pos)
        for (int city = 0; city < m; ++city)
            at[pos].push_back(seq_equals_const(n, m, pos, city));
    for (int ci = 0; ci < m; ++ci)
        for (int cj = 0; cj < m; ++cj) {
            if (ci == cj || t.w[ci][cj] == 0.0) continue;
            for (int pos = 0; pos < m; ++pos) {
                Polynomial hop = poly_mul(at[pos][ci], at[(pos + 1) % m][cj]);
                c = poly_add(c, poly_scale(hop, t.mu * t.w[ci][cj]));
            }
        }
    return c;
}

basis_t tsp_encode(int m, const std::vector<int>& route) {
    if (static_cast<int>(route.size()) != m) throw std::invalid_argument("route length != m");
    int b = tsp_bits_per_city(m);
    std::vector<bool> seen(m, false);
    basis_t x = 0;
    for (int pos = 0; pos < m; ++pos) {
        int city = route[pos];
        if (city < 0 || city >= m || seen[city]) throw std::invalid_argument("bad route");
        seen[city] = true;
        for (int j = 0; j < b; ++j)
            if ((city >> j) & 1) x |= basis_t{1} << tsp_var(m, pos, j);
    }
    return x;
}

std::optional<std::vector<int>> tsp_decode(int m, basis_t x) {
    int b = tsp_bits_per_city(m);
    std::vector<int> route(m, 0);
    std::vector<bool> seen(m, false);
    for (int pos = 0; pos < m; ++pos) {
        int city = 0;
        for (int j = 0; j < b; ++j)
            if (get_bit(x, tsp_var(m, pos, j))) city |= 1 << j;
        if (city >= m || seen[city]) return std::nullopt;
        seen[city] = true;
        route[pos] = city;
    }
    return route;
}

SymmetryTag bit_flip_symmetry(int n) {
    SymmetryTag t;
    t.kind = SymmetryKind::global_bit_flip;
    t.mask = full_mask(n);
    return t;
}

SymmetryTag no_symmetry() { return SymmetryTag{}; }

std::string family_name(Family f) {
    switch (f) {
        case Family::maxcut: return "maxcut";
        case Family::mis: return "mis";
        case Family::portfolio: return "portfolio";
        case Family::labs: return "labs";
        case Family::maxksat: return "maxksat";
        case Family::tsp: return "tsp";
    }
    throw std::logic_error("unreachable");
}

Family family_from_name(const std::string& s) {
    if (s == "maxcut") return Family::maxcut;
    if (s == "mis") return Family::mis;
    if (s == "portfolio") return Family::portfolio;
    if (s == "labs") return Family::labs;
    if (s == "maxksat") return Family::maxksat;
    if (s == "tsp") return Family::tsp;
    throw std::invalid_argument("unknown problem family: " + s);
}

CompiledProblem compile_problem(const ProblemInstance& inst) {
    CompiledProblem out;
    switch (inst.family) {
        case Family::maxcut:
            out.poly = maxcut_poly(inst.graph);
            out.symmetry = bit_flip_symmetry(inst.graph.n);
            break;
        case Family::mis:
            out.poly = mis_poly(inst.graph, inst.mis_lambda);
            break;
        case Family::portfolio:
            out.poly = portfolio_poly(inst.portfolio);
            out.constrained = true;
            out.default_hamming_weight = inst.portfolio.k;
            break;
        case Family::labs:
            out.poly = labs_poly(inst.labs_n);
            out.symmetry = bit_flip_symmetry(inst.labs_n);
            break;
        case Family::maxksat:
            out.poly = maxksat_poly(inst.sat);
            break;
        case Family::tsp:
            out.poly = tsp_poly(inst.tsp);
            break;
    }
    return out;
}

}  // namespace gqw
