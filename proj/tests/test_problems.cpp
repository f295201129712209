#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "gqwalk/bits.hpp"
#include "gqwalk/problems.hpp"
#include "gqwalk/spectrum.hpp"
#include "oracles.hpp"

using namespace gqw;

namespace {

void check_poly_matches(const Polynomial& p, const std::function<double(basis_t)>& direct,
                        int n, double tol = 1e-9) {
    REQUIRE(p.n == n);
    for (basis_t x = 0; x < (basis_t{1} << n); ++x) {
        double want = direct(x);
        double scale = std::max(1.0, std::abs(want));
        CHECK(std::abs(evaluate(p, x) - want) <= tol * scale);
    }
}

}  // namespace

TEST_CASE("erdos-renyi generator") {
    Graph tri = gen_erdos_renyi(3, 1.0, false, 0.0, 1.0, 5);
    CHECK(tri.edges.size() == 3);
    for (const auto& e : tri.edges) CHECK(e.w == 1.0);

    Graph empty = gen_erdos_renyi(6, 0.0, false, 0.0, 1.0, 5);
    CHECK(empty.edges.empty());

    SUBCASE("determinism and weight range") {
        Graph a = gen_erdos_renyi(20, 0.5, true, -10.0, 10.0, 123);
        Graph b = gen_erdos_renyi(20, 0.5, true, -10.0, 10.0, 123);
        REQUIRE(a.edges.size() == b.edges.size());
        for (std::size_t i = 0; i < a.edges.size(); ++i) {
            CHECK(a.edges[i].u == b.edges[i].u);
            CHECK(a.edges[i].v == b.edges[i].v);
            CHECK(a.edges[i].w == b.edges[i].w);
            CHECK(a.edges[i].u < a.edges[i].v);
            CHECK(a.edges[i].w >= -10.0);
            CHECK(a.edges[i].w <= 10.0);
        }
        Graph c = gen_erdos_renyi(20, 0.5, true, -10.0, 10.0, 124);
        bool same = a.edges.size() == c.edges.size();
        if (same)
            for (std::size_t i = 0; i < a.edges.size(); ++i)
                same = same && a.edges[i].u == c.edges[i].u && a.edges[i].v == c.edges[i].v &&
                       a.edges[i].w == c.edges[i].w;
        CHECK(!same);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(gen_erdos_renyi(1, 0.5, false, 0, 1, 0), std::invalid_argument);
        CHECK_THROWS_AS(gen_erdos_renyi(4, 1.5, false, 0, 1, 0), std::invalid_argument);
    }
}

TEST_CASE("unit-disk generator") {
    SUBCASE("two close vertices share an edge and the max-degree weight") {
        Graph g = gen_unit_disk(2, 10.0, 1.0, 7);
        REQUIRE(g.edges.size() == 1);
        REQUIRE(g.vertex_weights.size() == 2);
        CHECK(g.vertex_weights[0] == doctest::Approx(11.0));
        CHECK(g.vertex_weights[1] == doctest::Approx(11.0));
    }
    SUBCASE("mutually distant vertices degrade to unit weights") {
        Graph g = gen_unit_disk(8, 1e-9, 1.0, 7);
        CHECK(g.edges.empty());
        for (double w : g.vertex_weights) CHECK(w == doctest::Approx(1.0));
    }
    SUBCASE("weight rule follows degree centrality") {
        Graph g = gen_unit_disk(12, 0.5, 1.0, 42);
        REQUIRE(!g.edges.empty());
        std::vector<int> deg(12, 0);
        for (const auto& e : g.edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        int max_deg = *std::max_element(deg.begin(), deg.end());
        REQUIRE(max_deg > 0);
        for (int i = 0; i < 12; ++i)
            CHECK(g.vertex_weights[i] ==
                  doctest::Approx(1.0 + 10.0 * deg[i] / max_deg).epsilon(1e-12));
    }
    SUBCASE("determinism") {
        Graph a = gen_unit_disk(10, 0.4, 1.0, 9);
        Graph b = gen_unit_disk(10, 0.4, 1.0, 9);
        REQUIRE(a.edges.size() == b.edges.size());
        for (std::size_t i = 0; i < a.edges.size(); ++i) {
            CHECK(a.edges[i].u == b.edges[i].u);
            CHECK(a.edges[i].v == b.edges[i].v);
        }
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(gen_unit_disk(1, 0.5, 1.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(gen_unit_disk(4, 0.0, 1.0, 0), std::invalid_argument);
    }
}

TEST_CASE("max-cut polynomial") {
    Graph tri;
    tri.n = 3;
    tri.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}};
    Polynomial p = maxcut_poly(tri);
    CHECK(p.degree() == 2);
    CHECK(evaluate(p, bits_from_string("010")) == doctest::Approx(-2.0));
    CHECK(evaluate(p, 0) == 0.0);
    CHECK(enumerate_spectrum(p).c_min == doctest::Approx(-2.0));

    SUBCASE("matches the direct cut evaluator") {
        Graph g = gen_erdos_renyi(7, 0.6, true, -10.0, 10.0, 31);
        Polynomial q = maxcut_poly(g);
        check_poly_matches(q, [&](basis_t x) { return oracle::maxcut_cost(g, x); }, 7);
    }
    SUBCASE("bit-flip symmetry") {
        Graph g = gen_erdos_renyi(8, 0.5, true, -5.0, 5.0, 77);
        Polynomial q = maxcut_poly(g);
        basis_t mask = full_mask(8);
        for (basis_t x = 0; x < 256; ++x)
            CHECK(evaluate(q, x) == doctest::Approx(evaluate(q, x ^ mask)).epsilon(1e-12));
    }
    SUBCASE("an edgeless graph is rejected") {
        Graph g;
        g.n = 3;
        CHECK_THROWS_AS(maxcut_poly(g), std::invalid_argument);
    }
}

TEST_CASE("independent-set polynomial") {
    Graph path;
    path.n = 3;
    path.edges = {{0, 1, 1.0}, {1, 2, 1.0}};

    CHECK(mis_default_lambda(path) == doctest::Approx(3.0));
    Polynomial p = mis_poly(path, 3.0);
    CHECK(evaluate(p, bits_from_string("101")) == doctest::Approx(-2.0));
    CHECK(evaluate(p, bits_from_string("111")) == doctest::Approx(3.0));

    SUBCASE("unique optimum on the path") {
        Spectrum s = enumerate_spectrum(p);
        CHECK(s.c_min == doctest::Approx(-2.0));
        int at_min = 0;
        for (basis_t x = 0; x < 8; ++x)
            if (s.rank_of[x] == 0) ++at_min;
        CHECK(at_min == 1);
        CHECK(s.rank_of[bits_from_string("101")] == 0);
    }
    SUBCASE("default penalty beats the heaviest pair") {
        Graph g = gen_unit_disk(9, 0.6, 1.0, 3);
        REQUIRE(!g.edges.empty());
        double best = 0.0;
        for (const auto& e : g.edges)
            best = std::max(best, g.vertex_weights[e.u] + g.vertex_weights[e.v]);
        CHECK(mis_default_lambda(g) == doctest::Approx(best + 1.0));
        Polynomial q = mis_poly(g);
        check_poly_matches(
            q, [&](basis_t x) { return oracle::mis_cost(g, mis_default_lambda(g), x); }, 9);
    }
    SUBCASE("override penalty") {
        Graph g = gen_unit_disk(8, 0.6, 1.0, 4);
        Polynomial q = mis_poly(g, 2.0);
        check_poly_matches(q, [&](basis_t x) { return oracle::mis_cost(g, 2.0, x); }, 8);
    }
    SUBCASE("edgeless graph gets the vanishing penalty") {
        Graph g;
        g.n = 3;
        CHECK(mis_default_lambda(g) == doctest::Approx(1.0));
        Polynomial q = mis_poly(g);
        CHECK(evaluate(q, 0b111) == doctest::Approx(-3.0));
    }
}

TEST_CASE("portfolio polynomial") {
    PortfolioInstance inst;
    inst.n = 2;
    inst.k = 1;
    inst.lambda = 0.5;
    inst.mu = {1.0, 2.0};
    inst.sigma = {{0, 1, 4.0}};
    Polynomial p = portfolio_poly(inst);
    CHECK(evaluate(p, bits_from_string("11")) == doctest::Approx(-1.0));
    CHECK(evaluate(p, bits_from_string("00")) == doctest::Approx(0.0));
    CHECK(evaluate(p, bits_from_string("01")) == doctest::Approx(-2.0));

    SUBCASE("generated instances match the direct evaluator") {
        PortfolioInstance gen = gen_portfolio(6, 3, 0.5, 11);
        CHECK(gen.n == 6);
        CHECK(gen.k == 3);
        Polynomial q = portfolio_poly(gen);
        check_poly_matches(q, [&](basis_t x) { return oracle::portfolio_cost(gen, x); }, 6);
    }
    SUBCASE("generator determinism and guards") {
        PortfolioInstance a = gen_portfolio(8, 4, 0.5, 321);
        PortfolioInstance b = gen_portfolio(8, 4, 0.5, 321);
        CHECK(a.mu == b.mu);
        CHECK(a.sigma == b.sigma);
        CHECK_THROWS_AS(gen_portfolio(8, 9, 0.5, 0), std::invalid_argument);
        CHECK_THROWS_AS(gen_portfolio(8, -1, 0.5, 0), std::invalid_argument);
    }
    SUBCASE("asset file loader") {
        namespace fs = std::filesystem;
        fs::path file = fs::temp_directory_path() / "gqw_test_assets.txt";
        {
            std::ofstream out(file);
            out << "# toy universe\n3\n0 1.0\n1 2.0\n2 0.25\n0 1 4.0\n0 2 -1.0\n";
        }
        PortfolioInstance loaded = load_portfolio(file.string(), 1, 0.5);
        CHECK(loaded.n == 3);
        CHECK(loaded.mu == std::vector<double>{1.0, 2.0, 0.25});
        REQUIRE(loaded.sigma.size() == 2);
        CHECK(std::get<2>(loaded.sigma[0]) == 4.0);
        Polynomial q = portfolio_poly(loaded);
        check_poly_matches(q, [&](basis_t x) { return oracle::portfolio_cost(loaded, x); }, 3);
        fs::remove(file);
        CHECK_THROWS(load_portfolio((fs::temp_directory_path() / "gqw_missing.txt").string(),
                                    1, 0.5));
    }
}

TEST_CASE("low-autocorrelation polynomial") {
    SUBCASE("shortest sequence is constant energy 1") {
        Polynomial p = labs_poly(2);
        CHECK(p.degree() == 0);
        CHECK(p.constant_term() == doctest::Approx(1.0));
        for (basis_t x = 0; x < 4; ++x) CHECK(evaluate(p, x) == doctest::Approx(1.0));
    }
    SUBCASE("n=3 minimum energy is 1") {
        Spectrum s = enumerate_spectrum(labs_poly(3));
        CHECK(s.c_min == doctest::Approx(1.0));
    }
    SUBCASE("matches the direct sidelobe evaluator") {
        for (int n = 2; n <= 8; ++n) {
            Polynomial p = labs_poly(n);
            CHECK(p.degree() <= 4);
            check_poly_matches(p, [&](basis_t x) { return oracle::labs_cost(n, x); }, n);
        }
    }
    SUBCASE("sequence negation symmetry") {
        Polynomial p = labs_poly(7);
        basis_t mask = full_mask(7);
        for (basis_t x = 0; x < 128; ++x)
            CHECK(evaluate(p, x) == doctest::Approx(evaluate(p, x ^ mask)).epsilon(1e-12));
    }
}

TEST_CASE("max-k-sat") {
    SUBCASE("single clause truth table") {
        SatInstance pos_neg{2, 2, {{1, -2}}};  // x0 or not-x1
        Polynomial p = maxksat_poly(pos_neg);
        CHECK(evaluate(p, bits_from_string("00")) == doctest::Approx(-1.0));
        CHECK(evaluate(p, bits_from_string("01")) == doctest::Approx(0.0));
        SatInstance pos_pos{2, 2, {{1, 2}}};  // x0 or x1
        Polynomial q = maxksat_poly(pos_pos);
        CHECK(evaluate(q, bits_from_string("00")) == doctest::Approx(0.0));
        CHECK(evaluate(q, bits_from_string("10")) == doctest::Approx(-1.0));
    }
    SUBCASE("negated cost counts satisfied clauses exactly") {
        SatInstance inst = gen_maxksat(8, 3, 2.0, 19);
        CHECK(inst.clauses.size() == 16);
        Polynomial p = maxksat_poly(inst);
        CHECK(p.degree() <= 3);
        for (basis_t x = 0; x < 256; ++x)
            CHECK(evaluate(p, x) == oracle::maxksat_cost(inst, x));
    }
    SUBCASE("clause structure when k = n") {
        SatInstance inst = gen_maxksat(3, 3, 3.0, 2);
        for (const auto& clause : inst.clauses) {
            std::set<int> vars;
            for (int lit : clause) vars.insert(std::abs(lit));
            CHECK(vars == std::set<int>{1, 2, 3});
        }
    }
    SUBCASE("clause count follows the floor rule") {
        CHECK(gen_maxksat(5, 3, 1.0, 0).clauses.size() == 5);
        CHECK(gen_maxksat(10, 3, 4.27, 0).clauses.size() == 42);
    }
    SUBCASE("satisfiable formula reaches cost -m") {
        SatInstance inst{4, 3, {{1, 2, -3}, {1, -2, 4}, {1, 3, 4}}};
        Spectrum s = enumerate_spectrum(maxksat_poly(inst));
        CHECK(s.c_min == doctest::Approx(-3.0));
    }
    SUBCASE("determinism and guards") {
        SatInstance a = gen_maxksat(10, 3, 2.0, 5);
        SatInstance b = gen_maxksat(10, 3, 2.0, 5);
        CHECK(a.clauses == b.clauses);
        CHECK_THROWS_AS(gen_maxksat(3, 4, 2.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(gen_maxksat(3, 2, 0.1, 0), std::invalid_argument);
    }
}

TEST_CASE("traveling salesperson") {
    SUBCASE("bit budget per city") {
        CHECK(tsp_bits_per_city(2) == 1);
        CHECK(tsp_bits_per_city(4) == 2);
        CHECK(tsp_bits_per_city(5) == 3);
        CHECK(tsp_bits_per_city(8) == 3);
        CHECK(tsp_bits_per_city(9) == 4);
        CHECK(tsp_num_qubits(4) == 8);
        CHECK(tsp_num_qubits(6) == 18);
    }
    SUBCASE("route encoding reproduces the reference bit string") {
        basis_t x = tsp_encode(6, {0, 3, 1, 5, 2, 4});
        CHECK(bits_to_string(x, 18) == "000011001101010100");
    }
    SUBCASE("encode and decode are inverse on all 4-city routes") {
        std::vector<int> route = {0, 1, 2, 3};
        do {
            basis_t x = tsp_encode(4, route);
            auto back = tsp_decode(4, x);
            REQUIRE(back.has_value());
            CHECK(*back == route);
        } while (std::next_permutation(route.begin(), route.end()));
    }
    SUBCASE("duplicate cities fail to decode") {
        basis_t x = tsp_encode(4, {0, 1, 2, 3});
        // overwrite position 1 with city 0's code
        basis_t pos1 = (x >> 2) & 0b11;
        x ^= pos1 << 2;
        CHECK(!tsp_decode(4, x).has_value());
    }
    SUBCASE("out-of-range city codes fail to decode") {
        // m=3 uses 2 bits per city; code 3 is invalid
        basis_t x = tsp_encode(3, {0, 1, 2});
        x |= 0b11;  // force position 0 to code 3
        CHECK(!tsp_decode(3, x).has_value());
    }
    SUBCASE("unit distances make every tour optimal at cost 4") {
        TspInstance t;
        t.m = 4;
        t.w = {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}};
        t.mu = 1.0;
        Polynomial p = tsp_poly(t);
        std::vector<int> route = {0, 1, 2, 3};
        do {
            CHECK(evaluate(p, tsp_encode(4, route)) == doctest::Approx(4.0));
        } while (std::next_permutation(route.begin(), route.end()));
        Spectrum s = enumerate_spectrum(p);
        CHECK(s.c_min == doctest::Approx(4.0));
    }
    SUBCASE("matches the direct evaluator over the whole space") {
        TspInstance t = gen_tsp(4, 0.5, 2.0, 13);
        CHECK(t.w[1][2] == t.w[2][1]);
        CHECK(t.w[0][0] == 0.0);
        Polynomial p = tsp_poly(t);
        CHECK(p.n == 8);
        CHECK(p.degree() <= 4);
        check_poly_matches(p, [&](basis_t x) { return oracle::tsp_cost(t, x); }, 8, 1e-9);
    }
    SUBCASE("decodable states carry no penalty") {
        TspInstance t = gen_tsp(4, 0.5, 2.0, 21);
        Polynomial p = tsp_poly(t);
        for (basis_t x = 0; x < 256; ++x) {
            auto route = tsp_decode(4, x);
            if (!route.has_value()) continue;
            double tour = 0.0;
            for (int i = 0; i < 4; ++i) tour += t.w[(*route)[i]][(*route)[(i + 1) % 4]];
            CHECK(evaluate(p, x) == doctest::Approx(t.mu * tour).epsilon(1e-12));
        }
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(gen_tsp(1, 0, 1, 0), std::invalid_argument);
        TspInstance bad;
        bad.m = 4;
        bad.w = {{0, 1}, {1, 0}};
        CHECK_THROWS_AS(tsp_poly(bad), std::invalid_argument);
        CHECK_THROWS_AS(tsp_encode(4, {0, 1, 2}), std::invalid_argument);
        CHECK_THROWS_AS(tsp_encode(4, {0, 1, 2, 2}), std::invalid_argument);
    }
}

TEST_CASE("problem compilation and symmetry tags") {
    SUBCASE("max-cut and sequence problems carry the flip symmetry") {
        ProblemInstance inst;
        inst.family = Family::maxcut;
        inst.graph = gen_erdos_renyi(6, 0.5, false, 0, 1, 8);
        CompiledProblem cp = compile_problem(inst);
        CHECK(cp.symmetry.kind == SymmetryKind::global_bit_flip);
        CHECK(cp.symmetry.mask == full_mask(6));
        CHECK(!cp.constrained);
        for (basis_t x = 0; x < 64; ++x)
            CHECK(evaluate(cp.poly, x) ==
                  doctest::Approx(evaluate(cp.poly, cp.symmetry.mate(x))).epsilon(1e-12));

        ProblemInstance labs;
        labs.family = Family::labs;
        labs.labs_n = 6;
        CHECK(compile_problem(labs).symmetry.kind == SymmetryKind::global_bit_flip);
    }
    SUBCASE("portfolio compiles as a constrained problem") {
        ProblemInstance inst;
        inst.family = Family::portfolio;
        inst.portfolio = gen_portfolio(6, 2, 0.5, 3);
        CompiledProblem cp = compile_problem(inst);
        CHECK(cp.constrained);
        CHECK(cp.default_hamming_weight == 2);
        CHECK(cp.symmetry.kind == SymmetryKind::none);
    }
    SUBCASE("independent set respects the lambda override") {
        ProblemInstance inst;
        inst.family = Family::mis;
        inst.graph = gen_unit_disk(6, 0.6, 1.0, 17);
        CompiledProblem def = compile_problem(inst);
        inst.mis_lambda = 2.0;
        CompiledProblem two = compile_problem(inst);
        CHECK(def.symmetry.kind == SymmetryKind::none);
        for (basis_t x = 0; x < 64; ++x) {
            CHECK(evaluate(def.poly, x) ==
                  doctest::Approx(oracle::mis_cost(inst.graph, mis_default_lambda(inst.graph), x)));
            CHECK(evaluate(two.poly, x) == doctest::Approx(oracle::mis_cost(inst.graph, 2.0, x)));
        }
    }
    SUBCASE("family names round-trip") {
        for (Family f : {Family::maxcut, Family::mis, Family::portfolio, Family::labs,
                         Family::maxksat, Family::tsp})
            CHECK(family_from_name(family_name(f)) == f);
        CHECK_THROWS_AS(family_from_name("qap"), std::invalid_argument);
    }
}
