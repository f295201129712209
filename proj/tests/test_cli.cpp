#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gqwalk/io.hpp"

using gqw::json;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

struct Workspace {
    fs::path root;
    int counter = 0;

    Workspace() {
        root = fs::temp_directory_path() / ("gqwalk-cli-" + std::to_string(::getpid()));
        fs::create_directories(root);
    }
    ~Workspace() { fs::remove_all(root); }

    std::string path(const std::string& name) const { return (root / name).string(); }

    CmdResult run(const std::string& args) {
        std::string out_file = path("stdout." + std::to_string(counter));
        std::string err_file = path("stderr." + std::to_string(counter));
        ++counter;
        std::string cmd = std::string(GQWALK_BIN) + " " + args + " > " + out_file + " 2> " +
                          err_file;
        int status = std::system(cmd.c_str());
        CmdResult r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = gqw::read_text(out_file);
        r.err = gqw::read_text(err_file);
        return r;
    }
};

Workspace& ws() {
    static Workspace w;
    return w;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("gen writes instance files and reports sizes") {
    SUBCASE("random graph cut") {
        std::string file = ws().path("cut12.json");
        CmdResult r = ws().run("--seed 7 --out " + file +
                               " gen maxcut --n 12 --p-edge 0.5");
        CHECK(r.code == 0);
        CHECK(contains(r.out, "maxcut: n = 12 qubits"));
        CHECK(contains(r.out, "feasible space = 4096"));
        json j = gqw::load_json(file);
        CHECK(j.at("family") == "maxcut");
        CHECK(j.at("graph").at("n") == 12);
        CHECK(j.at("gen").at("seed") == 7);
    }
    SUBCASE("deterministic families need no seed") {
        std::string a = ws().path("labs-a.json"), b = ws().path("labs-b.json");
        CHECK(ws().run("--out " + a + " gen labs --n 14").code == 0);
        CHECK(ws().run("--out " + b + " gen labs --n 14").code == 0);
        CHECK(gqw::read_text(a) == gqw::read_text(b));
    }
    SUBCASE("tour encoding reports qubit count") {
        std::string file = ws().path("tour4.json");
        CmdResult r = ws().run("--seed 3 --out " + file +
                               " gen tsp --cities 4 --dist-range 0 1");
        CHECK(r.code == 0);
        CHECK(contains(r.out, "tsp: n = 8 qubits"));
    }
    SUBCASE("constrained families report the shell size") {
        std::string file = ws().path("pf6.json");
        CmdResult r = ws().run("--seed 9 --out " + file + " gen portfolio --n 6 --k 3");
        CHECK(r.code == 0);
        CHECK(contains(r.out, "feasible space = 20"));
    }
}

TEST_CASE("schedule builds gap curves and honors sampling flags") {
    std::string inst = ws().path("cut8.json");
    REQUIRE(ws().run("--seed 11 --out " + inst + " gen maxcut --n 8 --p-edge 0.5").code == 0);

    SUBCASE("full sampling is flagged exact") {
        std::string dir = ws().path("sched-exact");
        CmdResult r = ws().run("--seed 4 --out " + dir + " schedule --instance " + inst +
                               " --samples 256");
        CHECK(r.code == 0);
        CHECK(contains(r.out, "q_used = "));
        CHECK(contains(r.out, "(exact)"));
        json j = gqw::load_json(dir + "/schedule.json");
        CHECK(j.at("sampling").at("exact") == true);
        CHECK(j.at("sampling").at("q") == 256);
    }
    SUBCASE("sample count defaults to n squared") {
        std::string dir = ws().path("sched-default");
        CmdResult r = ws().run("--seed 4 --out " + dir + " schedule --instance " + inst);
        CHECK(r.code == 0);
        json j = gqw::load_json(dir + "/schedule.json");
        CHECK(j.at("sampling").at("q") == 64);
        CHECK(j.at("sampling").at("exact") == false);
    }
    SUBCASE("same seed reproduces identical bytes") {
        std::string d1 = ws().path("sched-s1"), d2 = ws().path("sched-s2");
        REQUIRE(ws().run("--seed 5 --out " + d1 + " schedule --instance " + inst).code == 0);
        REQUIRE(ws().run("--seed 5 --out " + d2 + " schedule --instance " + inst).code == 0);
        for (const char* name : {"/schedule.json", "/gamma_energy.csv", "/gamma_time.csv"})
            CHECK(gqw::read_text(d1 + name) == gqw::read_text(d2 + name));
        std::string d3 = ws().path("sched-s3");
        REQUIRE(ws().run("--seed 6 --out " + d3 + " schedule --instance " + inst).code == 0);
        CHECK(gqw::read_text(d1 + "/schedule.json") != gqw::read_text(d3 + "/schedule.json"));
    }
    SUBCASE("gamma curve files carry their headers") {
        std::string dir = ws().path("sched-curves");
        REQUIRE(ws().run("--seed 4 --out " + dir + " schedule --instance " + inst).code == 0);
        CHECK(split_lines(gqw::read_text(dir + "/gamma_energy.csv"))[0] == "energy,gamma");
        auto time_lines = split_lines(gqw::read_text(dir + "/gamma_time.csv"));
        CHECK(time_lines[0] == "t,gamma");
        CHECK(contains(time_lines.back(), ",0"));
        CHECK(fs::exists(dir + "/run_config.json"));
    }
}

TEST_CASE("run evolves and writes consistent artifacts") {
    std::string inst = ws().path("runcut.json");
    REQUIRE(ws().run("--seed 11 --out " + inst + " gen maxcut --n 8 --p-edge 0.5").code == 0);
    std::string dir = ws().path("run-main");
    CmdResult r = ws().run("--seed 2 --out " + dir + " run --instance " + inst +
                           " --slices 32 --snapshot-every 8");
    REQUIRE(r.code == 0);

    json summary = gqw::load_json(dir + "/summary.json");
    auto trace = split_lines(gqw::read_text(dir + "/trace.csv"));
    REQUIRE(trace.size() >= 3);

    SUBCASE("trace spans exactly the schedule window") {
        CHECK(trace[0] ==
              "t,quality,participation_ratio,P_rank0,P_rank1,P_rank2,P_rank3,P_rank4,P_rank5,"
              "P_rank6,P_rank7,P_top5pct");
        CHECK(std::stod(split_cells(trace[1])[0]) == 0.0);
        double last_t = std::stod(split_cells(trace.back())[0]);
        CHECK(std::abs(last_t - summary.at("T").get<double>()) <= 1e-9);
        json sched = gqw::load_json(dir + "/schedule.json");
        CHECK(std::abs(last_t - sched.at("total_time").get<double>()) <= 1e-9);
    }
    SUBCASE("summary agrees with the stored distribution") {
        auto dist = split_lines(gqw::read_text(dir + "/final_distribution.csv"));
        REQUIRE(dist.size() > 1);
        std::size_t ranks = dist.size() - 1;
        std::size_t keep = static_cast<std::size_t>(
            std::ceil(0.05 * static_cast<double>(ranks)));
        if (keep == 0) keep = 1;
        double top = 0.0, p0 = -1.0;
        for (std::size_t i = 1; i < dist.size(); ++i) {
            auto cells = split_cells(dist[i]);
            REQUIRE(cells.size() == 3);
            std::size_t rank = std::stoul(cells[0]);
            if (rank == 0) p0 = std::stod(cells[2]);
            if (rank < keep) top += std::stod(cells[2]);
        }
        CHECK(std::abs(top - summary.at("top5").get<double>()) <= 1e-9);
        CHECK(std::abs(p0 - summary.at("P0").get<double>()) <= 1e-9);
    }
    SUBCASE("display view only filters rows") {
        auto full = split_lines(gqw::read_text(dir + "/final_distribution.csv"));
        auto display = split_lines(gqw::read_text(dir + "/final_distribution_display.csv"));
        CHECK(display.size() <= full.size());
        for (std::size_t i = 1; i < display.size(); ++i)
            CHECK(std::stod(split_cells(display[i])[2]) >= 1e-3);
    }
    SUBCASE("reruns are byte-identical, new seeds are not") {
        std::string d2 = ws().path("run-same");
        REQUIRE(ws().run("--seed 2 --out " + d2 + " run --instance " + inst +
                         " --slices 32 --snapshot-every 8")
                    .code == 0);
        CHECK(gqw::read_text(dir + "/trace.csv") == gqw::read_text(d2 + "/trace.csv"));
        CHECK(gqw::read_text(dir + "/final_distribution.csv") ==
              gqw::read_text(d2 + "/final_distribution.csv"));
        CHECK(gqw::read_text(dir + "/schedule.json") == gqw::read_text(d2 + "/schedule.json"));
        std::string d3 = ws().path("run-other");
        REQUIRE(ws().run("--seed 3 --out " + d3 + " run --instance " + inst +
                         " --slices 32 --snapshot-every 8")
                    .code == 0);
        CHECK(gqw::read_text(dir + "/schedule.json") != gqw::read_text(d3 + "/schedule.json"));
    }
    SUBCASE("a stored schedule can be replayed") {
        std::string d2 = ws().path("run-replay");
        CmdResult rr = ws().run("--seed 9 --out " + d2 + " run --instance " + inst +
                                " --schedule " + dir + "/schedule.json --slices 16");
        REQUIRE(rr.code == 0);
        json replay = gqw::load_json(d2 + "/summary.json");
        CHECK(replay.at("T").get<double>() == summary.at("T").get<double>());
        CHECK_FALSE(fs::exists(d2 + "/schedule.json"));  // nothing was sampled
    }
}

TEST_CASE("run shot mode keeps the best measured solution") {
    std::string inst = ws().path("shotcut.json");
    REQUIRE(ws().run("--seed 21 --out " + inst + " gen maxcut --n 6 --p-edge 0.6").code == 0);
    std::string dir = ws().path("run-shots");
    CmdResult r = ws().run("--seed 5 --shots 1000 --out " + dir + " run --instance " + inst +
                           " --slices 32");
    REQUIRE(r.code == 0);
    json summary = gqw::load_json(dir + "/summary.json");
    REQUIRE(summary.contains("best_cost"));
    CHECK(summary.at("shots") == 1000);
    CHECK(summary.at("best_rank").get<int>() >= 0);
    CHECK(contains(r.out, "best sampled cost = "));

    // the reported cost must belong to the reported rank in the stored table
    auto dist = split_lines(gqw::read_text(dir + "/final_distribution.csv"));
    int rank = summary.at("best_rank").get<int>();
    auto cells = split_cells(dist.at(static_cast<std::size_t>(rank) + 1));
    CHECK(std::stod(cells[1]) == doctest::Approx(summary.at("best_cost").get<double>()));

    // with 1000 draws the best seen can be no worse than the modal rank
    double modal_prob = -1.0;
    double modal_cost = 0.0;
    for (std::size_t i = 1; i < dist.size(); ++i) {
        auto row = split_cells(dist[i]);
        double p = std::stod(row[2]);
        if (p > modal_prob) {
            modal_prob = p;
            modal_cost = std::stod(row[1]);
        }
    }
    CHECK(summary.at("best_cost").get<double>() <= modal_cost + 1e-12);

    std::string d2 = ws().path("run-shots-2");
    REQUIRE(ws().run("--seed 5 --shots 1000 --out " + d2 + " run --instance " + inst +
                     " --slices 32")
                .code == 0);
    json again = gqw::load_json(d2 + "/summary.json");
    CHECK(again.at("best_state") == summary.at("best_state"));
    CHECK(again.at("best_cost") == summary.at("best_cost"));
}

TEST_CASE("repeated runs aggregate into summary statistics") {
    std::string inst = ws().path("repcut.json");
    REQUIRE(ws().run("--seed 31 --out " + inst + " gen maxcut --n 5 --p-edge 0.6").code == 0);
    std::string dir = ws().path("run-repeat");
    CmdResult r = ws().run("--seed 1 --out " + dir + " run --instance " + inst +
                           " --slices 16 --repeat 3");
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "3 repeats"));
    json agg = gqw::load_json(dir + "/aggregate.json");
    CHECK(agg.at("repeats") == 3);
    REQUIRE(agg.at("per_rep").size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(fs::exists(dir + "/rep" + std::to_string(i) + "/summary.json"));
    double mean_q = agg.at("mean").at("final_quality").get<double>();
    CHECK(mean_q >= agg.at("min").at("final_quality").get<double>() - 1e-12);
    CHECK(mean_q <= agg.at("max").at("final_quality").get<double>() + 1e-12);
}

TEST_CASE("compare mode sweeps") {
    std::string inst = ws().path("cmpcut.json");
    REQUIRE(ws().run("--seed 41 --out " + inst + " gen maxcut --n 4 --p-edge 0.9").code == 0);

    SUBCASE("qaoa depth sweep") {
        std::string dir = ws().path("cmp-qaoa");
        CmdResult r = ws().run("--seed 2 --out " + dir + " compare --instance " + inst +
                               " --mode qaoa --qaoa-p 1 2 --opt-iters 60 --slices 16");
        REQUIRE(r.code == 0);
        auto rows = split_lines(gqw::read_text(dir + "/qaoa_results.csv"));
        REQUIRE(rows.size() == 3);
        CHECK(rows[0] == "p,depth,r_tilde");
        auto r1 = split_cells(rows[1]);
        CHECK(r1[0] == "1");
        CHECK(r1[0] == r1[1]);  // circuit depth equals p
        auto r2 = split_cells(rows[2]);
        CHECK(r2[0] == "2");
        CHECK(r2[0] == r2[1]);
        json rep = gqw::load_json(dir + "/comparison.json");
        CHECK(rep.at("qaoa").size() == 2);
        CHECK(rep.at("samba").at("T").get<double>() > 0.0);
        auto angle_lines = split_lines(gqw::read_text(dir + "/qaoa_angles.csv"));
        CHECK(angle_lines[0] == "p,layer,gamma,beta");
        CHECK(angle_lines.size() == 1 + 1 + 2);  // one row at p=1, two at p=2
    }
    SUBCASE("tuned profile at matched time") {
        std::string dir = ws().path("cmp-gqw");
        CmdResult r = ws().run("--seed 2 --out " + dir + " compare --instance " + inst +
                               " --mode gqw --opt-iters 8 --slices 16");
        REQUIRE(r.code == 0);
        json rep = gqw::load_json(dir + "/comparison.json");
        CHECK(rep.at("mode") == "gqw");
        CHECK(rep.at("T").get<double>() > 0.0);
        CHECK(rep.at("theta").size() == 6);
        CHECK(rep.at("samba").contains("quality"));
        CHECK(rep.at("gqw_tuned").contains("quality"));
        CHECK(fs::exists(dir + "/samba_distribution.csv"));
        CHECK(fs::exists(dir + "/gqw_distribution.csv"));
    }
    SUBCASE("sampling study tabulates by q") {
        std::string inst5 = ws().path("cmplabs.json");
        REQUIRE(ws().run("--out " + inst5 + " gen labs --n 5").code == 0);
        std::string dir = ws().path("cmp-study");
        CmdResult r = ws().run("--seed 2 --out " + dir + " compare --instance " + inst5 +
                               " --mode sampling-study --study-seeds 2 --slices 8");
        REQUIRE(r.code == 0);
        auto mean_rows = split_lines(gqw::read_text(dir + "/sampling_study.csv"));
        CHECK(mean_rows[0] == "q,quality,participation_ratio,P0,top5,T");
        REQUIRE(mean_rows.size() == 4);  // q = n, n^2, capped n^3
        CHECK(split_cells(mean_rows[1])[0] == "5");
        CHECK(split_cells(mean_rows[2])[0] == "25");
        CHECK(split_cells(mean_rows[3])[0] == "32");
        auto run_rows = split_lines(gqw::read_text(dir + "/sampling_study_runs.csv"));
        CHECK(run_rows.size() == 1 + 3 * 2);
    }
}

TEST_CASE("qasm export through the cli") {
    std::string inst = ws().path("qasmcut.json");
    REQUIRE(ws().run("--seed 51 --out " + inst + " gen maxcut --n 4 --p-edge 0.9").code == 0);
    std::string file = ws().path("circuit.qasm");
    CmdResult r = ws().run("--seed 1 --out " + file + " qasm --instance " + inst +
                           " --slices 4");
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "layers, depth = 1 + "));
    std::string text = gqw::read_text(file);
    CHECK(contains(text, "OPENQASM 2.0;"));
    CHECK(contains(text, "measure q -> c;"));

    SUBCASE("constrained instances cannot lower to gates") {
        std::string pf = ws().path("qasmpf.json");
        REQUIRE(ws().run("--seed 9 --out " + pf + " gen portfolio --n 6 --k 3").code == 0);
        CmdResult bad = ws().run("--out " + ws().path("x.qasm") + " qasm --instance " + pf);
        CHECK(bad.code == 2);
        CHECK(contains(bad.err, "usage error"));
    }
}

TEST_CASE("exit codes distinguish usage from validation failures") {
    SUBCASE("bad generator parameters") {
        CmdResult r = ws().run("--out " + ws().path("bad.json") + " gen maxcut --n 1");
        CHECK(r.code == 2);
        CHECK(contains(r.err, "usage error"));
    }
    SUBCASE("missing subcommand or file") {
        CHECK(ws().run("").code == 2);
        CHECK(ws().run("gen").code == 2);
        CHECK(ws().run("schedule --instance " + ws().path("nope.json")).code == 2);
        CHECK(ws().run("--mixer warp gen labs --n 5").code == 2);
    }
    SUBCASE("numeric validation failures") {
        std::string inst = ws().path("tiny.json");
        REQUIRE(ws().run("--seed 61 --out " + inst + " gen maxcut --n 6 --p-edge 0.5").code ==
                0);
        CmdResult r = ws().run("--seed 1 --out " + ws().path("oversample") +
                               " schedule --instance " + inst + " --samples 100");
        CHECK(r.code == 3);
        CHECK(contains(r.err, "error: "));

        std::string corrupt = ws().path("corrupt.json");
        gqw::write_text(corrupt, "this is not json{{{\n");
        CmdResult c = ws().run("--out " + ws().path("cdir") + " schedule --instance " + corrupt);
        CHECK(c.code == 3);
    }
}
