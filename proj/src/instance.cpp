#include "orsched/instance.hpp"

#include <cmath>

#include "orsched/error.hpp"

namespace orsched {

Instance::Instance(std::string name, int k, std::vector<Cost> setup,
                   std::optional<std::vector<Cost>> durations)
    : name_(std::move(name)), k_(k), setup_(std::move(setup)), durations_(std::move(durations)) {
    if (k_ < 2) {
        throw ContractError("instance needs at least 2 jobs, got " + std::to_string(k_));
    }
    if (setup_.size() != static_cast<std::size_t>(k_) * k_) {
        throw ContractError("setup matrix has " + std::to_string(setup_.size()) +
                            " entries, expected " + std::to_string(k_ * k_));
    }
    for (int v = 0; v < k_; ++v) {
        for (int u = 0; u < k_; ++u) {
            if (u == v) continue;
            Cost w = this->setup(v, u);
            if (!std::isfinite(w) || w < 0) {
                throw ContractError("setup[" + std::to_string(v) + "][" + std::to_string(u) +
                                    "] must be finite and nonnegative");
            }
            if (w != std::floor(w)) integral_ = false;
        }
    }
    if (durations_) {
        if (durations_->size() != static_cast<std::size_t>(k_)) {
            throw ContractError("durations must have one entry per job");
        }
        for (Cost p : *durations_) {
            if (!std::isfinite(p) || p <= 0) throw ContractError("durations must be positive");
        }
    }
}

Cost Instance::total_duration() const noexcept {
    Cost total = 0;
    if (durations_) {
        for (Cost p : *durations_) total += p;
    }
    return total;
}

bool is_permutation_of(std::span<const Job> order, int k) {
    if (order.size() != static_cast<std::size_t>(k)) return false;
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (Job j : order) {
        if (j < 0 || j >= k || seen[j]) return false;
        seen[j] = 1;
    }
    return true;
}

void require_permutation(std::span<const Job> order, int k) {
    if (!is_permutation_of(order, k)) {
        throw ContractError("order is not a permutation of " + std::to_string(k) + " jobs");
    }
}

Cost evaluate_cost(const Instance& inst, std::span<const Job> order) {
    require_permutation(order, inst.size());
    Cost total = 0;
    for (std::size_t i = 1; i < order.size(); ++i) total += inst.setup(order[i - 1], order[i]);
    return total;
}

Cost makespan(const Instance& inst, std::span<const Job> order) {
    if (!inst.durations()) throw ContractError("makespan requires job durations");
    return evaluate_cost(inst, order) + inst.total_duration();
}

Schedule::Schedule(const Instance& inst, Order o) : order(std::move(o)) {
    cost = evaluate_cost(inst, order);
}

} // namespace orsched
