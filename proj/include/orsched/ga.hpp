#pragma once

/// @file ga.hpp
/// @brief Steady-state GA with elitist optimal recombination.
///
/// Each iteration draws two parents uniformly, optionally mutates copies of
/// them, builds one offspring by optimal recombination and lets it overwrite
/// one parent. With probability min((D1/D2)/a, 1) the worse parent p2 is
/// replaced, otherwise p1, where Di = s(p_i) - s(child) and s(p1) <= s(p2).

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orsched/instance.hpp"
#include "orsched/recombination.hpp"

namespace orsched {

using Rng = std::mt19937_64;

enum class Mutation { none, shift, exchange };

/// What to do when a recombination problem has more blocks than the cap.
enum class QCapFallback { error, truncate_to_parent };

std::string to_string(Mutation m);
Mutation mutation_from_string(const std::string& s);

struct GAConfig {
    int population_size = 30;
    double replacement_parameter = 0.5;  ///< a; may be +infinity
    long max_iterations = 4000;
    Mutation mutation = Mutation::none;
    double mutation_probability = 0.0;
    std::uint64_t rng_seed = 1;
    long stats_period = 400;
    QCapFallback q_cap_fallback = QCapFallback::truncate_to_parent;
    int q_cap = kDefaultQCap;

    /// Throws ContractError on r < 2, a < 0, a probability outside [0,1], etc.
    void validate() const;
};

struct Population {
    std::vector<Schedule> members;
    Schedule best;

    Cost min_cost() const;
};

struct QSample {
    long iteration = 0;
    int q = 0;

    friend bool operator==(const QSample&, const QSample&) = default;
};

struct RunRecord {
    std::uint64_t seed = 0;
    /// best_cost_trace[t] is the best cost after t iterations; [0] is the initial population.
    std::vector<Cost> best_cost_trace;
    std::vector<QSample> q_samples;
    long iterations_run = 0;
    long capped_recombinations = 0;
    std::chrono::nanoseconds wall_time{0};
    Cost reached = 0;
    Schedule best;
};

/// Random pair of distinct jobs, then each remaining job (in random order) is
/// inserted at the slot with the smallest cost increase. Slots are: before the
/// first job, between each neighbour pair, after the last job; ties pick the
/// lowest slot.
Schedule arbitrary_insertion(const Instance& inst, Rng& rng);

/// Deterministic part of arbitrary_insertion: grows `partial` (at least one job)
/// by inserting `remaining` in the given order.
Schedule cheapest_insertion(const Instance& inst, Order partial, std::span<const Job> remaining);

Population init_population(const Instance& inst, const GAConfig& cfg, Rng& rng);

/// Indices of two distinct members drawn uniformly, ordered so the first is not worse.
std::pair<int, int> select_parents(const Population& pop, Rng& rng);

Schedule mutate_shift(const Instance& inst, const Schedule& s, Rng& rng);
Schedule mutate_exchange(const Instance& inst, const Schedule& s, Rng& rng);

/// min((d1/d2)/a, 1), with d1/d2 := 1 when both are zero. a = 0 gives 1 and
/// a = +inf gives 0. Requires 0 <= d1 <= d2.
double replacement_probability(Cost d1, Cost d2, double a);

/// Overwrites member `second` with probability replacement_probability(...),
/// otherwise member `first`. The deltas are taken against `first_cost` and
/// `second_cost`. Returns true when `second` was replaced.
bool apply_replacement(Population& pop, int first, int second, Cost first_cost, Cost second_cost,
                       const Schedule& child, double a, Rng& rng);

/// Convenience overload using the members' current costs.
bool apply_replacement(Population& pop, int first, int second, const Schedule& child, double a,
                       Rng& rng);

/// Called after initialization (iteration 0) and after every iteration.
using PopulationObserver = std::function<void(long iteration, const Population& pop)>;

RunRecord run_ga(const Instance& inst, const GAConfig& cfg, const PopulationObserver& observe = {});

} // namespace orsched
