#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "orsched/batch.hpp"
#include "orsched/error.hpp"
#include "orsched/exact.hpp"
#include "orsched/tsplib.hpp"
#include "support.hpp"

using namespace orsched;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("orsched_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommandResult {
    int status = -1;
    std::string output;
};

CommandResult run(const std::string& args) {
    std::string cmd = std::string(ORSCHED_CLI) + " " + args + " 2>&1";
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

BatchConfig small_batch(int runs, int threads) {
    BatchConfig cfg;
    cfg.ga.max_iterations = 300;
    cfg.ga.population_size = 10;
    cfg.ga.stats_period = 50;
    cfg.ga.rng_seed = 40;
    cfg.runs = runs;
    cfg.threads = threads;
    return cfg;
}

} // namespace

TEST_CASE("predicted block count and the good-recombination threshold") {
    CHECK(q_pred(2) == 1);
    CHECK(q_pred(36) == 5);
    CHECK(q_pred(64) == 6);
    CHECK(q_pred(65) == 6);
    CHECK(q_pred(323) == 8);
    CHECK(q_pred(443) == 8);
    CHECK(is_good_recombination(5, 36));
    CHECK_FALSE(is_good_recombination(6, 36));
    CHECK(is_good_recombination(6, 64));
    CHECK_FALSE(is_good_recombination(9, 323));
    for (int k = 2; k < 1000; ++k) {
        CHECK(is_good_recombination(q_pred(k), k));
        CHECK_FALSE(is_good_recombination(q_pred(k) + 1, k));
    }
}

TEST_CASE("aggregate_dynamics averages per sampled iteration") {
    RunRecord a, b;
    a.q_samples = {{0, 10}, {400, 4}};
    b.q_samples = {{0, 6}, {400, 6}, {800, 2}};
    std::vector<RunRecord> recs{a, b};
    auto rows = aggregate_dynamics(recs, 36);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].iteration == 0);
    CHECK(rows[0].q_cp == 8);
    CHECK(rows[0].delta_good == 0);
    CHECK(rows[1].q_cp == 5);
    CHECK(rows[1].delta_good == 0.5);
    CHECK(rows[2].samples == 1);
    CHECK(rows[2].delta_good == 1);
}

TEST_CASE("format_number") {
    CHECK(format_number(1323) == "1323");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(0.1) == "0.1");
    CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("batch report") {
    std::mt19937_64 gen(2);
    Instance inst = testing::random_instance(9, gen);
    const Cost opt = held_karp_path(inst).cost;
    BatchConfig cfg = small_batch(12, 1);
    cfg.target = opt;
    BatchReport rep = run_batch(inst, cfg);

    REQUIRE(rep.records.size() == 12);
    int reached = 0;
    double total = 0;
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        const RunRecord& r = rep.records[i];
        CHECK(r.seed == 40 + i);
        CHECK(r.best_cost_trace.size() == 301);
        CHECK(r.reached == r.best_cost_trace.back());
        CHECK(r.reached >= opt);
        reached += r.reached <= opt;
        total += r.reached;
    }
    REQUIRE(rep.n_opt);
    CHECK(*rep.n_opt == reached);
    CHECK(rep.mean_final == doctest::Approx(total / 12));
    CHECK(rep.q_pred == 3);
    CHECK(rep.dynamics.size() == 6);
    if (reached > 0) {
        REQUIRE(rep.t_avg_to_opt_seconds);
        CHECK(*rep.t_avg_to_opt_seconds == doctest::Approx(rep.t_avg_seconds * 12 / reached));
    }

    SUBCASE("thread count does not change any result") {
        BatchConfig par = cfg;
        par.threads = 3;
        BatchReport rep2 = run_batch(inst, par);
        for (std::size_t i = 0; i < rep.records.size(); ++i) {
            CHECK(rep.records[i].best_cost_trace == rep2.records[i].best_cost_trace);
            CHECK(rep.records[i].q_samples == rep2.records[i].q_samples);
        }
    }

    SUBCASE("CSV outputs round-trip and aggregate consistently") {
        TempDir dir;
        write_batch_outputs(rep, cfg, dir.path);
        CHECK(fs::exists(dir.path / "timing.txt"));
        std::vector<RunRecord> back;
        for (const RunRecord& r : rep.records) {
            std::ifstream in(dir.path / "runs" / (std::to_string(r.seed) + ".csv"));
            RunRecord rr = read_run_csv(in, r.seed);
            CHECK(rr.best_cost_trace == r.best_cost_trace);
            CHECK(rr.q_samples == r.q_samples);
            back.push_back(rr);
        }
        auto rows = aggregate_dynamics(back, inst.size());
        std::ostringstream a, b;
        write_dynamics_csv(rows, a);
        write_dynamics_csv(rep.dynamics, b);
        CHECK(a.str() == b.str());
        CHECK(slurp(dir.path / "dynamics.csv") == b.str());

        std::istringstream summary(slurp(dir.path / "summary.csv"));
        std::string head, row;
        std::getline(summary, head);
        std::getline(summary, row);
        CHECK(head == "instance,k,runs,iterations,population,alpha,mutation,seed,target,n_opt,best,mean_final,q_pred");
        CHECK(row.rfind("random9,9,12,300,10,0.5,none,40," + format_number(opt) + "," + std::to_string(reached) + ",",
                        0) == 0);

        TempDir again;
        write_batch_outputs(run_batch(inst, cfg), cfg, again.path);
        CHECK(slurp(again.path / "summary.csv") == slurp(dir.path / "summary.csv"));
        CHECK(slurp(again.path / "dynamics.csv") == slurp(dir.path / "dynamics.csv"));
        CHECK(slurp(again.path / "runs" / "45.csv") == slurp(dir.path / "runs" / "45.csv"));
    }
}

TEST_CASE("batch without a target has no N_opt") {
    std::mt19937_64 gen(3);
    Instance inst = testing::random_instance(6, gen);
    BatchReport rep = run_batch(inst, small_batch(2, 1));
    CHECK_FALSE(rep.n_opt);
    CHECK_FALSE(rep.t_avg_to_opt_seconds);
    CHECK_THROWS_AS(run_batch(inst, small_batch(0, 1)), ContractError);
}

TEST_CASE("optima fixture") {
    TempDir dir;
    std::ofstream(dir.path / "opt.csv") << "instance,k,optimum\nftv35,36,1323\n\nrbg323,323,1299\n";
    auto optima = load_optima(dir.path / "opt.csv");
    CHECK(optima.size() == 2);
    CHECK(optima.at("ftv35") == 1323);
    CHECK_THROWS_AS(load_optima(dir.path / "missing.csv"), Error);
}

TEST_CASE("command line tool") {
    TempDir dir;
    std::mt19937_64 gen(8);
    Instance inst = testing::random_instance(7, gen);
    const fs::path file = dir.path / "seven.atsp";
    {
        std::ofstream out(file);
        write_tsplib(inst, out);
    }
    const std::string inst_arg = " --instance " + file.string();

    SUBCASE("or reports blocks and passes its own oracle check") {
        std::ofstream(dir.path / "parents.txt") << "1 2 3 4 5 6 7\n2 1 3 4 6 7 5\n";
        CommandResult r = run("or" + inst_arg + " --parents " + (dir.path / "parents.txt").string());
        CHECK(r.status == 0);
        CHECK(r.output.find("q 2\n") != std::string::npos);
        CHECK(r.output.find("solutions 4\n") != std::string::npos);
        CHECK(r.output.find("special_edges 2\n") != std::string::npos);
        CHECK(r.output.find("oracle_check pass") != std::string::npos);
    }
    SUBCASE("or rejects a parent that is not a permutation") {
        std::ofstream(dir.path / "bad.txt") << "1 2 3 4 5 6 6\n1 2 3 4 5 6 7\n";
        CommandResult r = run("or" + inst_arg + " --parents " + (dir.path / "bad.txt").string());
        CHECK(r.status == 5);
        CHECK(r.output.find("error[invalid]") != std::string::npos);
    }
    SUBCASE("exact prints the Held-Karp optimum and can export the model") {
        const fs::path lp = dir.path / "seven.lp";
        CommandResult r = run("exact" + inst_arg + " --lp-out " + lp.string());
        CHECK(r.status == 0);
        CHECK(r.output.find("optimal cost " + format_number(held_karp_path(inst).cost) + "\n") != std::string::npos);
        CHECK(slurp(lp) == export_ilp_string(inst, {}));
    }
    SUBCASE("solve writes deterministic CSVs") {
        const std::string common = "solve" + inst_arg + " --runs 3 --iters 200 --pop 8 --stats-period 50 --seed 5";
        CommandResult a = run(common + " --out " + (dir.path / "a").string());
        CommandResult b = run(common + " --threads 2 --out " + (dir.path / "b").string());
        REQUIRE(a.status == 0);
        REQUIRE(b.status == 0);
        CHECK(a.output.find("q_pred=2") != std::string::npos);
        for (const char* f : {"summary.csv", "dynamics.csv", "runs/5.csv", "runs/7.csv"}) {
            CHECK(slurp(dir.path / "a" / f) == slurp(dir.path / "b" / f));
        }
    }
    SUBCASE("malformed instance files exit with the parse code") {
        std::ofstream(dir.path / "broken.atsp") << "NAME: x\nDIMENSION: two\n";
        CommandResult r = run("exact --instance " + (dir.path / "broken.atsp").string());
        CHECK(r.status == 3);
        CHECK(r.output.find("error[parse]") != std::string::npos);
    }
    SUBCASE("missing subcommand is a usage error") {
        CHECK(run("").status != 0);
    }
}
