#pragma once

/// @file batch.hpp
/// @brief Seeded GA batches and their CSV reports.
///
/// Output files (all deterministic for fixed arguments):
///   summary.csv       one row: instance,k,runs,iterations,population,alpha,mutation,
///                     seed,target,n_opt,best,mean_final,q_pred
///   dynamics.csv      iteration,q_cp,delta_good,samples
///   runs/<seed>.csv   iteration,best_cost,q   (q empty on unsampled iterations)
/// Wall times are written to timing.txt, which is not reproducible.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orsched/ga.hpp"
#include "orsched/instance.hpp"

namespace orsched {

struct BatchConfig {
    GAConfig ga;  ///< ga.rng_seed is the base seed; run i uses base + i
    int runs = 1;
    std::optional<Cost> target;
    int threads = 1;
};

struct DynamicsRow {
    long iteration = 0;
    double q_cp = 0;        ///< mean block count over runs
    double delta_good = 0;  ///< fraction of runs with q <= log2(k)
    int samples = 0;
};

struct BatchReport {
    std::string instance;
    int k = 0;
    int runs = 0;
    std::optional<Cost> target;
    std::optional<int> n_opt;
    Cost best = 0;
    double mean_final = 0;
    int q_pred = 0;
    double t_avg_seconds = 0;
    /// t_avg * runs / n_opt; empty when no run reached the target.
    std::optional<double> t_avg_to_opt_seconds;
    std::vector<DynamicsRow> dynamics;
    std::vector<RunRecord> records;  ///< in seed order
};

/// floor(ln k / ln 2): the block count up to which 2^q <= k.
int q_pred(int k);

/// True when q <= (1 + eps) ln k with eps = log2(e) - 1, i.e. q <= log2 k.
bool is_good_recombination(int q, int k);

/// Mean q and good fraction per sampled iteration, over runs sharing that sample.
std::vector<DynamicsRow> aggregate_dynamics(std::span<const RunRecord> records, int k);

/// Runs `cfg.runs` independent GA runs on a worker pool and joins them in seed order.
BatchReport run_batch(const Instance& inst, const BatchConfig& cfg);

void write_run_csv(const RunRecord& record, std::ostream& out);
void write_dynamics_csv(std::span<const DynamicsRow> rows, std::ostream& out);
void write_summary_csv(const BatchReport& report, const BatchConfig& cfg, std::ostream& out);
void write_timing(const BatchReport& report, std::ostream& out);

/// Writes summary.csv, dynamics.csv, runs/<seed>.csv and timing.txt under `dir`.
void write_batch_outputs(const BatchReport& report, const BatchConfig& cfg, const std::filesystem::path& dir);

/// Reads a per-run CSV back; fills seed, best_cost_trace, q_samples, reached.
RunRecord read_run_csv(std::istream& in, std::uint64_t seed);

/// Fixture of known optima: lines "name,optimum" (header "instance,k,optimum" also accepted).
std::map<std::string, Cost> load_optima(const std::filesystem::path& path);

/// Shortest round-trip text for a double; integers print without a decimal point.
std::string format_number(double v);

} // namespace orsched
