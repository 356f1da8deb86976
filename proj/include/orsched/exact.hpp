#pragma once

/// @file exact.hpp
/// @brief Exact machinery for the shortest Hamiltonian path.
///
/// Held-Karp dynamic programming for small instances, and the Boolean linear
/// program over successor variables x_ij and "wrap-around" variables y_ij
/// (y_ij = 1 when i is the last job and j the first). An integer solution of
/// the model is a successor permutation; when it splits into several cycles,
/// every cycle not holding the y arc is a subtour to be cut off.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "orsched/instance.hpp"

namespace orsched {

inline constexpr int kHeldKarpMaxJobs = 22;

struct PathOptimum {
    Cost cost = 0;
    Order order;
};

/// Exact minimum of s(pi) over all orders. Among optimal orders the
/// lexicographically smallest is returned. Throws LimitError when k > max_jobs.
PathOptimum held_karp_path(const Instance& inst, int max_jobs = kHeldKarpMaxJobs);

/// An integer point of the assignment model: successor[i] = j iff x_ij = 1,
/// and the single y arc (y_from, y_to).
struct AssignmentSolution {
    std::vector<Job> successor;
    Job y_from = 0;
    Job y_to = 0;

    /// Checks rows/columns sum to one, no self loops, and y lies on an x arc.
    void validate() const;
};

/// Successor map of a Hamiltonian path closed into a cycle, y on the closing arc.
AssignmentSolution encode_path(std::span<const Job> order);

/// Sum_{i != j in vertices} x_ij <= |vertices| - 1.
struct SubtourCut {
    std::string name;
    std::vector<Job> vertices;

    int rhs() const noexcept { return static_cast<int>(vertices.size()) - 1; }
    /// Left-hand side evaluated on an assignment solution.
    int lhs(const AssignmentSolution& sol) const;
    bool violated_by(const AssignmentSolution& sol) const { return lhs(sol) > rhs(); }
};

/// Cycles of the successor permutation other than the one holding the y arc.
/// Each cycle is listed in successor order starting from its smallest vertex;
/// cycles are ordered by that vertex.
std::vector<std::vector<Job>> find_subtours(const AssignmentSolution& sol);

/// Requires 2 <= |cycle| < k. The cut is named "subtour_<index>".
SubtourCut emit_cut(std::span<const Job> cycle, int k, int index);

struct IlpModel {
    int k = 0;
    std::vector<SubtourCut> cuts;

    std::size_t variable_count() const noexcept { return 2 * static_cast<std::size_t>(k) * (k - 1); }
    std::size_t base_constraint_count() const noexcept {
        return 2 * static_cast<std::size_t>(k) + 1 + static_cast<std::size_t>(k) * (k - 1);
    }
};

/// Objective value sum x_ij c_ij - sum y_ij c_ij of an assignment solution.
Cost ilp_objective(const Instance& inst, const AssignmentSolution& sol);

/// Writes the model in CPLEX LP format. Variable names are 1-based
/// (x_<i>_<j>, y_<i>_<j>); diagonal variables are left out of the model.
void export_ilp(const Instance& inst, const std::vector<SubtourCut>& cuts, std::ostream& out);

std::string export_ilp_string(const Instance& inst, const std::vector<SubtourCut>& cuts);

} // namespace orsched
