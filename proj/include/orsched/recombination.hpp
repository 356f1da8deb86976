#pragma once

/// @file recombination.hpp
/// @brief Exact optimal recombination of two permutations.
///
/// Given parents p1 and p2, the offspring must take job p1[i] or p2[i] at every
/// position i, and among all such permutations it has minimum path cost.
///
/// The allowed sets form a bipartite position-job graph. Positions where the
/// parents agree give "special" edges that every perfect matching uses; the
/// remaining edges split into blocks, each an even cycle with exactly two
/// perfect matchings. A binary vector delta (one bit per block) therefore
/// indexes all 2^q feasible offspring. Consecutive positions (i, i+1) are
/// "contacts"; summing their arc weights per block (P_j^0, P_j^1) and per
/// block pair (four cross sums) lets a Gray-code walk update the objective in
/// time proportional to the number of neighbouring blocks.

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "orsched/error.hpp"
#include "orsched/instance.hpp"

namespace orsched {

inline constexpr int kDefaultQCap = 30;
inline constexpr int kBruteForceQCap = 20;
inline constexpr int kMaxQCap = 62;

/// Allowed jobs per position: {p1[i]} where the parents agree, {p1[i], p2[i]} otherwise.
struct PrescriptionSystem {
    struct Set {
        Job first = 0;
        Job second = 0;
        bool singleton() const noexcept { return first == second; }
        bool contains(Job j) const noexcept { return j == first || j == second; }
    };

    int k = 0;
    std::vector<Set> sets;

    /// Throws ContractError when |X^i| <= 2, the occurrence count of each job and
    /// the singleton/doubleton pairing rule do not all hold.
    void validate() const;
};

/// Sum of arc weights over all contacts between two blocks, indexed by
/// [matching of this block][matching of the neighbour].
struct NeighborContact {
    int block = 0;
    std::array<std::array<Cost, 2>, 2> sums{};
};

struct Block {
    std::vector<int> positions;  ///< ascending
    std::vector<Job> matching0;  ///< matching0[t] is the job at positions[t] under w^0
    std::vector<Job> matching1;
    Cost p0 = 0;  ///< internal + special contacts under w^0
    Cost p1 = 0;
    std::vector<NeighborContact> neighbors;
};

struct SpecialEdge {
    int position = 0;
    Job job = 0;
};

struct BipartiteStructure {
    int k = 0;
    std::vector<SpecialEdge> special_edges;
    std::vector<Block> blocks;
    /// owner[i] is the block holding position i, or -1 for a special edge.
    std::vector<int> owner;
    /// job_at[d][i]: job at position i when its block uses matching d (equal for special positions).
    std::array<std::vector<Job>, 2> job_at;

    bool contacts_ready = false;
    /// Objective of the all-zeros assignment; valid once contacts are computed.
    Cost baseline = 0;

    int q() const noexcept { return static_cast<int>(blocks.size()); }

    /// Permutation induced by choosing matching delta[j] in block j.
    Order induce(std::span<const std::uint8_t> delta) const;
    /// Same, with bit j of `bits` selecting the matching of block j (q <= 62).
    Order induce_bits(std::uint64_t bits) const;
};

struct RecombinationResult {
    Schedule offspring;
    std::uint64_t solutions_enumerated = 0;
    int q = 0;
    int special_edges = 0;
    std::chrono::nanoseconds elapsed{0};
};

PrescriptionSystem build_prescriptions(const Schedule& p1, const Schedule& p2);

/// Splits positions into special edges and blocks in O(k).
BipartiteStructure decompose(const PrescriptionSystem& sys);

/// Fills P values, neighbour sums and the all-zeros baseline in place. O(k * q).
void precompute_contacts(const Instance& inst, BipartiteStructure& structure);

/// Walks all 2^q assignments in reflected Gray-code order. `visit(step, delta,
/// objective)` is called once per assignment, starting with all zeros at step 0;
/// consecutive calls differ in exactly one block.
template <class Visitor>
void enumerate_gray(const BipartiteStructure& st, Visitor&& visit);

/// Optimal recombination by Gray-code enumeration with incremental updates.
/// Ties keep the first assignment met in Gray order. Throws RecombinationTooLarge
/// when q exceeds `q_cap`.
RecombinationResult solve_gray(const Instance& inst, const Schedule& p1, const Schedule& p2,
                               int q_cap = kDefaultQCap);

/// Reference solver: materializes every assignment (delta_1 most significant,
/// lexicographic order) and evaluates it from scratch.
RecombinationResult solve_bruteforce(const Instance& inst, const Schedule& p1, const Schedule& p2,
                                     int q_cap = kBruteForceQCap);

/// Builds prescriptions, blocks and contact sums once, for callers that want
/// to inspect q before paying for enumeration.
class Recombination {
  public:
    Recombination(const Instance& inst, const Schedule& p1, const Schedule& p2);

    int q() const noexcept { return structure_.q(); }
    const PrescriptionSystem& prescriptions() const noexcept { return prescriptions_; }
    const BipartiteStructure& structure() const noexcept { return structure_; }

    RecombinationResult solve_gray(int q_cap = kDefaultQCap) const;
    RecombinationResult solve_bruteforce(int q_cap = kBruteForceQCap) const;

  private:
    const Instance* inst_;
    PrescriptionSystem prescriptions_;
    BipartiteStructure structure_;
};

// ---------------------------------------------------------------------------

template <class Visitor>
void enumerate_gray(const BipartiteStructure& st, Visitor&& visit) {
    if (!st.contacts_ready) throw ContractError("enumerate_gray needs precomputed contacts");
    const int q = st.q();
    if (q > kMaxQCap) throw RecombinationTooLarge(q, kMaxQCap);

    std::vector<std::uint8_t> delta(static_cast<std::size_t>(q), 0);
    Cost objective = st.baseline;
    visit(std::uint64_t{0}, std::span<const std::uint8_t>(delta), objective);

    const std::uint64_t total = std::uint64_t{1} << q;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int j = __builtin_ctzll(step);
        const Block& block = st.blocks[j];
        const int from = delta[j];
        const int to = from ^ 1;
        objective += (to ? block.p1 : block.p0) - (from ? block.p1 : block.p0);
        for (const NeighborContact& nb : block.neighbors) {
            const int other = delta[nb.block];
            objective += nb.sums[to][other] - nb.sums[from][other];
        }
        delta[j] = static_cast<std::uint8_t>(to);
        visit(step, std::span<const std::uint8_t>(delta), objective);
    }
}

} // namespace orsched
