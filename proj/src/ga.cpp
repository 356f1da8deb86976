#include "orsched/ga.hpp"

#include <algorithm>
#include <cmath>

#include "orsched/error.hpp"

namespace orsched {
namespace {

int uniform_index(Rng& rng, int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

/// Uniform index in [0, n) other than `excluded`.
int uniform_index_except(Rng& rng, int n, int excluded) {
    int v = uniform_index(rng, n - 1);
    return v >= excluded ? v + 1 : v;
}

} // namespace

std::string to_string(Mutation m) {
    switch (m) {
    case Mutation::none: return "none";
    case Mutation::shift: return "shift";
    case Mutation::exchange: return "exchange";
    }
    return "none";
}

Mutation mutation_from_string(const std::string& s) {
    if (s == "none") return Mutation::none;
    if (s == "shift") return Mutation::shift;
    if (s == "exchange") return Mutation::exchange;
    throw ContractError("unknown mutation '" + s + "' (expected none, shift or exchange)");
}

void GAConfig::validate() const {
    if (population_size < 2) throw ContractError("population size must be at least 2");
    if (std::isnan(replacement_parameter) || replacement_parameter < 0) {
        throw ContractError("replacement parameter a must be >= 0");
    }
    if (max_iterations < 0) throw ContractError("iteration count must be nonnegative");
    if (!(mutation_probability >= 0 && mutation_probability <= 1)) {
        throw ContractError("mutation probability must lie in [0, 1]");
    }
    if (stats_period < 1) throw ContractError("stats period must be positive");
    if (q_cap < 0 || q_cap > kMaxQCap) throw ContractError("q cap out of range");
}

Cost Population::min_cost() const {
    if (members.empty()) throw ContractError("empty population");
    Cost m = members.front().cost;
    for (const Schedule& s : members) m = std::min(m, s.cost);
    return m;
}

Schedule cheapest_insertion(const Instance& inst, Order partial, std::span<const Job> remaining) {
    if (partial.empty()) throw ContractError("insertion needs a nonempty partial order");
    partial.reserve(partial.size() + remaining.size());
    Cost cost = 0;
    for (std::size_t i = 1; i < partial.size(); ++i) cost += inst.setup(partial[i - 1], partial[i]);

    for (Job u : remaining) {
        // Slot 0 prepends, slot n appends, slot s in between inserts before partial[s].
        const std::size_t n = partial.size();
        std::size_t best_slot = 0;
        Cost best_delta = inst.setup(u, partial.front());
        for (std::size_t s = 1; s < n; ++s) {
            Cost d = inst.setup(partial[s - 1], u) + inst.setup(u, partial[s]) -
                     inst.setup(partial[s - 1], partial[s]);
            if (d < best_delta) {
                best_delta = d;
                best_slot = s;
            }
        }
        Cost append = inst.setup(partial.back(), u);
        if (append < best_delta) {
            best_delta = append;
            best_slot = n;
        }
        partial.insert(partial.begin() + static_cast<std::ptrdiff_t>(best_slot), u);
        cost += best_delta;
    }
    require_permutation(partial, inst.size());
    if (!inst.integral()) cost = evaluate_cost(inst, partial);
    return Schedule::with_cost(std::move(partial), cost);
}

Schedule arbitrary_insertion(const Instance& inst, Rng& rng) {
    const int k = inst.size();
    const Job a = uniform_index(rng, k);
    const Job b = uniform_index_except(rng, k, a);
    Order rest;
    rest.reserve(static_cast<std::size_t>(k - 2));
    for (Job j = 0; j < k; ++j) {
        if (j != a && j != b) rest.push_back(j);
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    return cheapest_insertion(inst, Order{a, b}, rest);
}

Population init_population(const Instance& inst, const GAConfig& cfg, Rng& rng) {
    cfg.validate();
    Population pop;
    pop.members.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) pop.members.push_back(arbitrary_insertion(inst, rng));
    pop.best = *std::min_element(pop.members.begin(), pop.members.end(),
                                 [](const Schedule& x, const Schedule& y) { return x.cost < y.cost; });
    return pop;
}

std::pair<int, int> select_parents(const Population& pop, Rng& rng) {
    const int r = static_cast<int>(pop.members.size());
    if (r < 2) throw ContractError("parent selection needs at least two members");
    int first = uniform_index(rng, r);
    int second = uniform_index_except(rng, r, first);
    if (pop.members[second].cost < pop.members[first].cost) std::swap(first, second);
    return {first, second};
}

Schedule mutate_shift(const Instance& inst, const Schedule& s, Rng& rng) {
    const int k = static_cast<int>(s.order.size());
    Order order = s.order;
    const int from = uniform_index(rng, k);
    const int to = uniform_index_except(rng, k, from);
    Job job = order[from];
    order.erase(order.begin() + from);
    order.insert(order.begin() + to, job);
    return Schedule(inst, std::move(order));
}

Schedule mutate_exchange(const Instance& inst, const Schedule& s, Rng& rng) {
    const int k = static_cast<int>(s.order.size());
    Order order = s.order;
    const int i = uniform_index(rng, k);
    const int j = uniform_index_except(rng, k, i);
    std::swap(order[i], order[j]);
    return Schedule(inst, std::move(order));
}

double replacement_probability(Cost d1, Cost d2, double a) {
    if (!(d1 >= 0) || !(d2 >= d1)) {
        throw ContractError("replacement probability needs 0 <= d1 <= d2");
    }
    if (std::isnan(a) || a < 0) throw ContractError("replacement parameter a must be >= 0");
    if (a == 0) return 1.0;
    if (std::isinf(a)) return 0.0;
    const double ratio = d2 == 0 ? 1.0 : d1 / d2;
    return std::min(ratio / a, 1.0);
}

bool apply_replacement(Population& pop, int first, int second, Cost first_cost, Cost second_cost,
                       const Schedule& child, double a, Rng& rng) {
    const double p = replacement_probability(first_cost - child.cost, second_cost - child.cost, a);
    const bool replace_second = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    pop.members[replace_second ? second : first] = child;
    if (child.cost < pop.best.cost) pop.best = child;
    return replace_second;
}

bool apply_replacement(Population& pop, int first, int second, const Schedule& child, double a,
                       Rng& rng) {
    return apply_replacement(pop, first, second, pop.members[first].cost, pop.members[second].cost, child,
                             a, rng);
}

RunRecord run_ga(const Instance& inst, const GAConfig& cfg, const PopulationObserver& observe) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();

    RunRecord record;
    record.seed = cfg.rng_seed;
    Rng rng(cfg.rng_seed);
    Population pop = init_population(inst, cfg, rng);
    record.best_cost_trace.reserve(static_cast<std::size_t>(cfg.max_iterations) + 1);
    record.best_cost_trace.push_back(pop.best.cost);
    if (observe) observe(0, pop);

    std::bernoulli_distribution mutate(cfg.mutation_probability);
    for (long t = 1; t <= cfg.max_iterations; ++t) {
        auto [i1, i2] = select_parents(pop, rng);
        Schedule parent1 = pop.members[i1];
        Schedule parent2 = pop.members[i2];

        if (cfg.mutation != Mutation::none) {
            for (Schedule* p : {&parent1, &parent2}) {
                if (!mutate(rng)) continue;
                *p = cfg.mutation == Mutation::shift ? mutate_shift(inst, *p, rng) : mutate_exchange(inst, *p, rng);
            }
            if (parent2.cost < parent1.cost) {
                std::swap(parent1, parent2);
                std::swap(i1, i2);
            }
        }

        Recombination problem(inst, parent1, parent2);
        if (t % cfg.stats_period == 0) record.q_samples.push_back({t, problem.q()});

        Schedule child;
        if (problem.q() > cfg.q_cap) {
            if (cfg.q_cap_fallback == QCapFallback::error) throw RecombinationTooLarge(problem.q(), cfg.q_cap);
            ++record.capped_recombinations;
            child = parent1;
        } else {
            child = problem.solve_gray(cfg.q_cap).offspring;
            // Only reachable through rounding on fractional weights.
            if (child.cost > parent1.cost) child = parent1;
        }

        apply_replacement(pop, i1, i2, parent1.cost, parent2.cost, child, cfg.replacement_parameter, rng);
        record.best_cost_trace.push_back(pop.best.cost);
        record.iterations_run = t;
        if (observe) observe(t, pop);
    }

    record.reached = pop.best.cost;
    record.best = pop.best;
    record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - started);
    return record;
}

} // namespace orsched
