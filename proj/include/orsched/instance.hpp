#pragma once

/// @file instance.hpp
/// @brief Problem data for 1|s_vu|C_max and the path-cost objective.
///
/// A schedule is a permutation of jobs; its objective is the total setup time
/// s(pi) = sum of setup[pi[i-1]][pi[i]]. Makespan differs from s(pi) only by the
/// constant sum of job durations, so all optimization works on s(pi).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orsched {

using Cost = double;
using Job = int;
using Order = std::vector<Job>;

/// Immutable k x k setup-time matrix plus optional job durations.
class Instance {
  public:
    /// Validates k >= 2, a k*k row-major matrix with finite nonnegative off-diagonal
    /// entries and, when given, k positive durations. Throws ContractError otherwise.
    Instance(std::string name, int k, std::vector<Cost> setup,
             std::optional<std::vector<Cost>> durations = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    int size() const noexcept { return k_; }

    Cost setup(Job from, Job to) const noexcept {
        return setup_[static_cast<std::size_t>(from) * k_ + to];
    }
    std::span<const Cost> row(Job from) const noexcept {
        return {setup_.data() + static_cast<std::size_t>(from) * k_, static_cast<std::size_t>(k_)};
    }
    std::span<const Cost> matrix() const noexcept { return setup_; }

    const std::optional<std::vector<Cost>>& durations() const noexcept { return durations_; }

    /// True when every off-diagonal weight is an integer, so path sums are exact.
    bool integral() const noexcept { return integral_; }

    /// Sum of durations, or 0 when durations are absent.
    Cost total_duration() const noexcept;

  private:
    std::string name_;
    int k_;
    std::vector<Cost> setup_;
    std::optional<std::vector<Cost>> durations_;
    bool integral_ = true;
};

/// Throws ContractError unless `order` is a permutation of {0, ..., k-1}.
void require_permutation(std::span<const Job> order, int k);

bool is_permutation_of(std::span<const Job> order, int k);

/// Path cost s(pi). Diagonal entries are never read.
Cost evaluate_cost(const Instance& inst, std::span<const Job> order);

/// Makespan s(pi) + sum p_v; requires durations.
Cost makespan(const Instance& inst, std::span<const Job> order);

/// A permutation together with its cached path cost.
struct Schedule {
    Order order;
    Cost cost = 0;

    Schedule() = default;
    Schedule(const Instance& inst, Order o);

    /// Builds from a trusted order and an already-known cost.
    static Schedule with_cost(Order o, Cost c) {
        Schedule s;
        s.order = std::move(o);
        s.cost = c;
        return s;
    }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

} // namespace orsched
