// Command-line front end: GA batches, exact tools and single recombinations.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "orsched/batch.hpp"
#include "orsched/error.hpp"
#include "orsched/exact.hpp"
#include "orsched/ga.hpp"
#include "orsched/recombination.hpp"
#include "orsched/tsplib.hpp"

namespace {

using namespace orsched;

enum ExitCode : int {
    kOk = 0,
    kParseFailure = 3,
    kIoFailure = 4,
    kInvalidArgument = 5,
    kLimitExceeded = 6,
    kOracleMismatch = 7,
};

std::string one_based(const Order& order) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < order.size(); ++i) ss << (i ? " " : "") << order[i] + 1;
    return ss.str();
}

double parse_alpha(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double a = std::stod(text, &used);
    if (used != text.size()) throw ContractError("invalid --alpha '" + text + "'");
    return a;
}

struct SolveArgs {
    std::string instance;
    int runs = 1;
    long iters = 4000;
    int pop = 30;
    std::string alpha = "0.5";
    std::uint64_t seed = 1;
    long stats_period = 400;
    std::optional<double> target;
    std::string optima;
    std::string mutation = "none";
    double mutation_prob = 1.0;
    std::string out = "results";
    int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    int q_cap = kDefaultQCap;
    std::string fallback = "truncate";
};

int cmd_solve(const SolveArgs& a) {
    Instance inst = load_tsplib(a.instance);

    BatchConfig cfg;
    cfg.runs = a.runs;
    cfg.threads = a.threads;
    cfg.ga.population_size = a.pop;
    cfg.ga.replacement_parameter = parse_alpha(a.alpha);
    cfg.ga.max_iterations = a.iters;
    cfg.ga.mutation = mutation_from_string(a.mutation);
    cfg.ga.mutation_probability = cfg.ga.mutation == Mutation::none ? 0.0 : a.mutation_prob;
    cfg.ga.rng_seed = a.seed;
    cfg.ga.stats_period = a.stats_period;
    cfg.ga.q_cap = a.q_cap;
    cfg.ga.q_cap_fallback = a.fallback == "error" ? QCapFallback::error : QCapFallback::truncate_to_parent;
    cfg.target = a.target;
    if (!cfg.target && !a.optima.empty()) {
        auto optima = load_optima(a.optima);
        if (auto it = optima.find(inst.name()); it != optima.end()) cfg.target = it->second;
    }

    std::cout << "instance " << inst.name() << " k=" << inst.size() << " q_pred=" << q_pred(inst.size())
              << " (ln k / ln 2 = " << std::log(inst.size()) / std::log(2.0) << ")\n";

    BatchReport report = run_batch(inst, cfg);
    write_batch_outputs(report, cfg, a.out);

    std::cout << "runs " << report.runs << " best " << format_number(report.best) << " mean_final "
              << format_number(report.mean_final) << '\n';
    if (report.target) {
        std::cout << "target " << format_number(*report.target) << " N_opt " << *report.n_opt << '/'
                  << report.runs << '\n';
    }
    std::cout << "t_avg " << report.t_avg_seconds << " s";
    if (report.target) {
        std::cout << "  t_avg_opt ";
        if (report.t_avg_to_opt_seconds) {
            std::cout << *report.t_avg_to_opt_seconds << " s";
        } else {
            std::cout << "undefined (N_opt = 0)";
        }
    }
    std::cout << "\noutputs written to " << a.out << '\n';
    return kOk;
}

int cmd_exact(const std::string& instance_path, const std::string& lp_out, int max_jobs) {
    Instance inst = load_tsplib(instance_path);
    const bool small = inst.size() <= max_jobs;
    if (small) {
        PathOptimum opt = held_karp_path(inst, max_jobs);
        std::cout << "instance " << inst.name() << " k=" << inst.size() << '\n'
                  << "optimal cost " << format_number(opt.cost) << '\n'
                  << "order " << one_based(opt.order) << '\n';
    }
    if (!small || !lp_out.empty()) {
        const std::string path = lp_out.empty() ? inst.name() + ".lp" : lp_out;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path);
        export_ilp(inst, {}, out);
        IlpModel model{inst.size(), {}};
        std::cout << "LP model written to " << path << " (" << model.variable_count() << " binaries, "
                  << model.base_constraint_count() << " constraints)\n";
        if (!small) {
            std::cout << "k exceeds the Held-Karp guard of " << max_jobs
                      << "; solve the model with a MILP solver, add subtour cuts for any\n"
                         "cycle that avoids the y arc, and re-solve until the solution is one cycle.\n";
        }
    }
    return kOk;
}

int cmd_or(const std::string& instance_path, const std::string& parents_path) {
    Instance inst = load_tsplib(instance_path);
    std::ifstream in(parents_path);
    if (!in) throw Error("cannot open parent file " + parents_path);
    std::vector<long> values;
    for (std::string tok; in >> tok;) {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw ContractError("parent file holds a non-integer token '" + tok + "'");
        values.push_back(v);
    }
    const int k = inst.size();
    if (values.size() != 2 * static_cast<std::size_t>(k)) {
        throw ContractError("parent file must hold two permutations of " + std::to_string(k) + " jobs");
    }
    Order o1, o2;
    for (int i = 0; i < k; ++i) {
        o1.push_back(static_cast<Job>(values[i] - 1));
        o2.push_back(static_cast<Job>(values[k + i] - 1));
    }
    Schedule p1(inst, o1);
    Schedule p2(inst, o2);

    Recombination problem(inst, p1, p2);
    RecombinationResult r = problem.solve_gray();
    std::cout << "q " << r.q << '\n'
              << "solutions " << r.solutions_enumerated << '\n'
              << "special_edges " << r.special_edges << '\n'
              << "parent_costs " << format_number(p1.cost) << ' ' << format_number(p2.cost) << '\n'
              << "offspring " << one_based(r.offspring.order) << '\n'
              << "offspring_cost " << format_number(r.offspring.cost) << '\n';
    if (r.q <= kBruteForceQCap) {
        RecombinationResult oracle = problem.solve_bruteforce();
        const bool ok = oracle.offspring.cost == r.offspring.cost;
        std::cout << "oracle_check " << (ok ? "pass" : "FAIL") << '\n';
        if (!ok) return kOracleMismatch;
    } else {
        std::cout << "oracle_check skipped (q > " << kBruteForceQCap << ")\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal-recombination GA for single-machine scheduling with setup times"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run seeded GA batches and write CSV reports");
    solve_cmd->option_defaults()->always_capture_default();
    solve_cmd->add_option("--instance", solve.instance, "TSPLIB file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--runs", solve.runs, "Independent runs (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--iters", solve.iters, "Iterations per run")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--pop", solve.pop, "Population size r")->check(CLI::Range(2, 1000000));
    solve_cmd->add_option("--alpha", solve.alpha, "Replacement parameter a (number or 'inf')");
    solve_cmd->add_option("--seed", solve.seed, "Base RNG seed");
    solve_cmd->add_option("--stats-period", solve.stats_period, "Iterations between q samples")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--target", solve.target, "Known optimum for N_opt");
    solve_cmd->add_option("--optima", solve.optima, "CSV of known optima, looked up by instance name");
    solve_cmd->add_option("--mutation", solve.mutation, "none, shift or exchange")
        ->check(CLI::IsMember({"none", "shift", "exchange"}));
    solve_cmd->add_option("--mutation-prob", solve.mutation_prob, "Per-parent mutation probability")
        ->check(CLI::Range(0.0, 1.0));
    solve_cmd->add_option("--out", solve.out, "Output directory");
    solve_cmd->add_option("--threads", solve.threads, "Worker threads")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--q-cap", solve.q_cap, "Largest block count enumerated")->check(CLI::Range(0, kMaxQCap));
    solve_cmd->add_option("--q-cap-fallback", solve.fallback, "truncate or error")
        ->check(CLI::IsMember({"truncate", "error"}));

    std::string exact_instance, lp_out;
    int max_jobs = kHeldKarpMaxJobs;
    auto* exact_cmd = app.add_subcommand("exact", "Held-Karp optimum, or LP model export for large k");
    exact_cmd->add_option("--instance", exact_instance, "TSPLIB file")->required()->check(CLI::ExistingFile);
    exact_cmd->add_option("--lp-out", lp_out, "Write the LP model here");
    exact_cmd->add_option("--max-jobs", max_jobs, "Held-Karp guard")->check(CLI::Range(2, kHeldKarpMaxJobs));

    std::string or_instance, parents;
    auto* or_cmd = app.add_subcommand("or", "Solve one optimal recombination problem");
    or_cmd->add_option("--instance", or_instance, "TSPLIB file")->required()->check(CLI::ExistingFile);
    or_cmd->add_option("--parents", parents, "Two 1-based permutations")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) return cmd_solve(solve);
        if (*exact_cmd) return cmd_exact(exact_instance, lp_out, max_jobs);
        if (*or_cmd) return cmd_or(or_instance, parents);
    } catch (const ParseError& e) {
        std::cerr << "error[parse]: " << e.what() << '\n';
        return kParseFailure;
    } catch (const LimitError& e) {
        std::cerr << "error[limit]: " << e.what() << '\n';
        return kLimitExceeded;
    } catch (const ContractError& e) {
        std::cerr << "error[invalid]: " << e.what() << '\n';
        return kInvalidArgument;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error[invalid]: " << e.what() << '\n';
        return kInvalidArgument;
    } catch (const std::exception& e) {
        std::cerr << "error[io]: " << e.what() << '\n';
        return kIoFailure;
    }
    return kOk;
}
