#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.
// Nothing here calls into the block decomposition or the DP code it checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "orsched/instance.hpp"

namespace orsched::testing {

inline Instance random_instance(int k, std::mt19937_64& rng, int max_weight = 100) {
    std::uniform_int_distribution<int> w(0, max_weight);
    std::vector<Cost> m(static_cast<std::size_t>(k) * k, 0);
    for (int v = 0; v < k; ++v) {
        for (int u = 0; u < k; ++u) m[v * k + u] = v == u ? 0 : w(rng);
    }
    return Instance("random" + std::to_string(k), k, std::move(m));
}

inline Order random_order(int k, std::mt19937_64& rng) {
    Order o(static_cast<std::size_t>(k));
    std::iota(o.begin(), o.end(), 0);
    std::shuffle(o.begin(), o.end(), rng);
    return o;
}

/// Plain re-summation of consecutive setup entries.
inline Cost resum(const Instance& inst, const Order& o) {
    Cost c = 0;
    for (std::size_t i = 0; i + 1 < o.size(); ++i) c += inst.matrix()[o[i] * inst.size() + o[i + 1]];
    return c;
}

struct Optimum {
    Cost cost = std::numeric_limits<Cost>::infinity();
    Order order;
};

/// k! enumeration; the first optimum met in lexicographic order is kept.
inline Optimum factorial_optimum(const Instance& inst) {
    Order o(static_cast<std::size_t>(inst.size()));
    std::iota(o.begin(), o.end(), 0);
    Optimum best;
    do {
        Cost c = resum(inst, o);
        if (c < best.cost) {
            best.cost = c;
            best.order = o;
        }
    } while (std::next_permutation(o.begin(), o.end()));
    return best;
}

struct ChoiceEnumeration {
    Optimum best;
    std::set<Order> feasible;
};

/// Picks p1[i] or p2[i] independently at every position (2^k vectors) and keeps
/// the choices that form permutations.
inline ChoiceEnumeration enumerate_choices(const Instance& inst, const Order& p1, const Order& p2) {
    const int k = static_cast<int>(p1.size());
    ChoiceEnumeration result;
    Order o(static_cast<std::size_t>(k));
    std::vector<char> seen(static_cast<std::size_t>(k));
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        std::fill(seen.begin(), seen.end(), 0);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            o[i] = (mask >> i & 1U) ? p2[i] : p1[i];
            ok = !seen[o[i]];
            seen[o[i]] = 1;
        }
        if (!ok || !result.feasible.insert(o).second) continue;
        Cost c = resum(inst, o);
        if (c < result.best.cost) {
            result.best.cost = c;
            result.best.order = o;
        }
    }
    return result;
}

/// Parent pair whose disagreement positions form `cycle_lengths` blocks (each >= 2
/// positions), laid out contiguously after `agree` agreeing positions, then shuffled
/// by a common random relabelling of positions and jobs.
inline std::pair<Order, Order> planted_parents(int agree, const std::vector<int>& cycle_lengths,
                                               std::mt19937_64& rng) {
    int k = agree;
    for (int len : cycle_lengths) k += len;
    Order p1(static_cast<std::size_t>(k));
    std::iota(p1.begin(), p1.end(), 0);
    Order p2 = p1;
    int at = agree;
    for (int len : cycle_lengths) {
        // Rotating a run of len jobs by one makes the run a single block.
        std::rotate(p2.begin() + at, p2.begin() + at + 1, p2.begin() + at + len);
        at += len;
    }
    Order pos = random_order(k, rng);
    Order jobs = random_order(k, rng);
    Order q1(static_cast<std::size_t>(k)), q2(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        q1[pos[i]] = jobs[p1[i]];
        q2[pos[i]] = jobs[p2[i]];
    }
    return {q1, q2};
}

} // namespace orsched::testing
