#include <limits>
#include <string>

#include "orsched/error.hpp"
#include "orsched/exact.hpp"

namespace orsched {

// best[set][v] is the cheapest path that starts at v and visits exactly the
// jobs of `set` (v in set). Working forward from the full set with
// smallest-index tie-breaking then yields the lexicographically first optimum.
PathOptimum held_karp_path(const Instance& inst, int max_jobs) {
    const int k = inst.size();
    if (k > max_jobs) {
        throw LimitError("Held-Karp is limited to " + std::to_string(max_jobs) + " jobs, instance has " +
                         std::to_string(k));
    }
    if (max_jobs > 30) throw LimitError("Held-Karp guard cannot exceed 30 jobs");

    const std::size_t sets = std::size_t{1} << k;
    constexpr Cost inf = std::numeric_limits<Cost>::infinity();
    std::vector<Cost> best(sets * k, inf);
    auto at = [&](std::size_t set, int v) -> Cost& { return best[set * k + v]; };

    for (int v = 0; v < k; ++v) at(std::size_t{1} << v, v) = 0;
    for (std::size_t set = 1; set < sets; ++set) {
        if ((set & (set - 1)) == 0) continue;
        for (int v = 0; v < k; ++v) {
            if (!(set >> v & 1U)) continue;
            const std::size_t rest = set & ~(std::size_t{1} << v);
            Cost m = inf;
            for (int u = 0; u < k; ++u) {
                if (!(rest >> u & 1U)) continue;
                Cost c = inst.setup(v, u) + at(rest, u);
                if (c < m) m = c;
            }
            at(set, v) = m;
        }
    }

    PathOptimum result;
    std::size_t set = sets - 1;
    int current = 0;
    result.cost = inf;
    for (int v = 0; v < k; ++v) {
        if (at(set, v) < result.cost) {
            result.cost = at(set, v);
            current = v;
        }
    }
    result.order.push_back(current);
    Cost remaining = result.cost;
    while (static_cast<int>(result.order.size()) < k) {
        const std::size_t rest = set & ~(std::size_t{1} << current);
        for (int u = 0; u < k; ++u) {
            if (!(rest >> u & 1U)) continue;
            if (inst.setup(current, u) + at(rest, u) == remaining) {
                remaining = at(rest, u);
                set = rest;
                current = u;
                break;
            }
        }
        result.order.push_back(current);
    }
    return result;
}

} // namespace orsched
