#include "orsched/recombination.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace orsched {
namespace {

using Clock = std::chrono::steady_clock;

constexpr int kSpecial = -1;

NeighborContact& neighbor_slot(Block& block, int other) {
    for (NeighborContact& nb : block.neighbors) {
        if (nb.block == other) return nb;
    }
    block.neighbors.push_back(NeighborContact{other, {}});
    return block.neighbors.back();
}

void check_cap(int q, int cap) {
    if (cap < 0 || cap > kMaxQCap) {
        throw ContractError("q cap must lie in [0, " + std::to_string(kMaxQCap) + "]");
    }
    if (q > cap) throw RecombinationTooLarge(q, cap);
}

} // namespace

void PrescriptionSystem::validate() const {
    if (sets.size() != static_cast<std::size_t>(k)) throw ContractError("prescription count differs from k");
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    std::vector<int> singleton_hits(static_cast<std::size_t>(k), 0);
    for (const Set& s : sets) {
        for (Job j : {s.first, s.second}) {
            if (j < 0 || j >= k) throw ContractError("prescription names job outside [0, k)");
        }
        if (s.singleton()) {
            ++count[s.first];
            ++singleton_hits[s.first];
        } else {
            ++count[s.first];
            ++count[s.second];
        }
    }
    for (int j = 0; j < k; ++j) {
        const int c = count[j];
        if (c < 1 || c > 2) throw ContractError("job " + std::to_string(j) + " must appear in 1 or 2 sets");
        if (c == 1 && singleton_hits[j] != 1) {
            throw ContractError("job " + std::to_string(j) + " appears once but not in a singleton set");
        }
        if (c == 2 && singleton_hits[j] != 0) {
            throw ContractError("job " + std::to_string(j) + " appears twice but touches a singleton set");
        }
    }
}

PrescriptionSystem build_prescriptions(const Schedule& p1, const Schedule& p2) {
    const int k = static_cast<int>(p1.order.size());
    if (p2.order.size() != p1.order.size()) throw ContractError("parents have different lengths");
    require_permutation(p1.order, k);
    require_permutation(p2.order, k);

    PrescriptionSystem sys;
    sys.k = k;
    sys.sets.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) sys.sets[i] = {p1.order[i], p2.order[i]};
    return sys;
}

BipartiteStructure decompose(const PrescriptionSystem& sys) {
    sys.validate();
    const int k = sys.k;

    // Doubleton positions holding each job (exactly two, by C2-C3).
    std::vector<std::array<int, 2>> holders(static_cast<std::size_t>(k), {-1, -1});
    for (int i = 0; i < k; ++i) {
        const auto& s = sys.sets[i];
        if (s.singleton()) continue;
        for (Job j : {s.first, s.second}) {
            auto& h = holders[j];
            (h[0] < 0 ? h[0] : h[1]) = i;
        }
    }

    BipartiteStructure st;
    st.k = k;
    st.owner.assign(static_cast<std::size_t>(k), kSpecial);
    st.job_at[0].assign(static_cast<std::size_t>(k), 0);
    st.job_at[1].assign(static_cast<std::size_t>(k), 0);
    std::vector<char> visited(static_cast<std::size_t>(k), 0);

    for (int start = 0; start < k; ++start) {
        const auto& s = sys.sets[start];
        if (s.singleton()) {
            st.special_edges.push_back({start, s.first});
            st.job_at[0][start] = st.job_at[1][start] = s.first;
            continue;
        }
        if (visited[start]) continue;

        // Walk the cycle: at each position the w^0 job leads to the other
        // position holding it, where that job belongs to w^1.
        const int id = st.q();
        Block block;
        int pos = start;
        Job next0 = s.first;
        while (true) {
            visited[pos] = 1;
            st.owner[pos] = id;
            st.job_at[0][pos] = next0;
            block.positions.push_back(pos);
            const auto& h = holders[next0];
            const int following = h[0] == pos ? h[1] : h[0];
            if (following < 0) throw ContractError("internal: block is not a cycle");
            const auto& fs = sys.sets[following];
            st.job_at[1][following] = next0;
            if (following == start) break;
            if (visited[following]) throw ContractError("internal: block is not a simple cycle");
            next0 = fs.first == next0 ? fs.second : fs.first;
            pos = following;
        }
        if (block.positions.size() < 2) throw ContractError("internal: block shorter than a 4-cycle");

        std::sort(block.positions.begin(), block.positions.end());
        for (int p : block.positions) {
            block.matching0.push_back(st.job_at[0][p]);
            block.matching1.push_back(st.job_at[1][p]);
        }
        st.blocks.push_back(std::move(block));
    }
    return st;
}

void precompute_contacts(const Instance& inst, BipartiteStructure& st) {
    if (inst.size() != st.k) throw ContractError("instance size differs from structure");
    for (Block& b : st.blocks) {
        b.p0 = b.p1 = 0;
        b.neighbors.clear();
    }
    const auto& j0 = st.job_at[0];
    const auto& j1 = st.job_at[1];
    auto job = [&](int d, int i) { return d ? j1[i] : j0[i]; };

    Cost constant = 0;
    Cost cross_zero = 0;
    for (int i = 0; i + 1 < st.k; ++i) {
        const int a = st.owner[i];
        const int b = st.owner[i + 1];
        if (a == kSpecial && b == kSpecial) {
            constant += inst.setup(j0[i], j0[i + 1]);
        } else if (a == b || b == kSpecial || a == kSpecial) {
            Block& blk = st.blocks[a == kSpecial ? b : a];
            blk.p0 += inst.setup(j0[i], j0[i + 1]);
            blk.p1 += inst.setup(j1[i], j1[i + 1]);
        } else {
            NeighborContact& ab = neighbor_slot(st.blocks[a], b);
            NeighborContact& ba = neighbor_slot(st.blocks[b], a);
            for (int da = 0; da < 2; ++da) {
                for (int db = 0; db < 2; ++db) {
                    Cost w = inst.setup(job(da, i), job(db, i + 1));
                    ab.sums[da][db] += w;
                    ba.sums[db][da] += w;
                }
            }
            cross_zero += inst.setup(j0[i], j0[i + 1]);
        }
    }

    Cost baseline = constant + cross_zero;
    for (const Block& b : st.blocks) baseline += b.p0;
    st.baseline = baseline;
    st.contacts_ready = true;
}

Order BipartiteStructure::induce(std::span<const std::uint8_t> delta) const {
    if (delta.size() != blocks.size()) throw ContractError("delta length differs from q");
    Order order(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int b = owner[i];
        order[i] = job_at[b == kSpecial ? 0 : delta[b]][i];
    }
    return order;
}

Order BipartiteStructure::induce_bits(std::uint64_t bits) const {
    Order order(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int b = owner[i];
        order[i] = job_at[b == kSpecial ? 0 : (bits >> b) & 1U][i];
    }
    return order;
}

Recombination::Recombination(const Instance& inst, const Schedule& p1, const Schedule& p2)
    : inst_(&inst), prescriptions_(build_prescriptions(p1, p2)), structure_(decompose(prescriptions_)) {
    if (prescriptions_.k != inst.size()) throw ContractError("parents do not match the instance size");
    precompute_contacts(inst, structure_);
}

RecombinationResult Recombination::solve_gray(int q_cap) const {
    const auto started = Clock::now();
    const int q = structure_.q();
    check_cap(q, q_cap);

    Cost best = 0;
    std::uint64_t best_bits = 0;
    std::uint64_t visited = 0;
    enumerate_gray(structure_, [&](std::uint64_t step, std::span<const std::uint8_t>, Cost objective) {
        if (step == 0 || objective < best) {
            best = objective;
            best_bits = step ^ (step >> 1);
        }
        ++visited;
    });

    RecombinationResult result;
    Order order = structure_.induce_bits(best_bits);
    if (!inst_->integral()) best = evaluate_cost(*inst_, order);
    result.offspring = Schedule::with_cost(std::move(order), best);
    result.solutions_enumerated = visited;
    result.q = q;
    result.special_edges = static_cast<int>(structure_.special_edges.size());
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - started);
    return result;
}

RecombinationResult Recombination::solve_bruteforce(int q_cap) const {
    const auto started = Clock::now();
    const int q = structure_.q();
    if (q_cap > kBruteForceQCap) {
        throw ContractError("brute-force cap cannot exceed " + std::to_string(kBruteForceQCap));
    }
    check_cap(q, q_cap);

    const std::uint64_t total = std::uint64_t{1} << q;
    std::vector<std::uint8_t> delta(static_cast<std::size_t>(q));
    Schedule best;
    for (std::uint64_t m = 0; m < total; ++m) {
        for (int j = 0; j < q; ++j) delta[j] = static_cast<std::uint8_t>((m >> (q - 1 - j)) & 1U);
        Order order = structure_.induce(delta);
        Cost cost = evaluate_cost(*inst_, order);
        if (m == 0 || cost < best.cost) best = Schedule::with_cost(std::move(order), cost);
    }

    RecombinationResult result;
    result.offspring = std::move(best);
    result.solutions_enumerated = total;
    result.q = q;
    result.special_edges = static_cast<int>(structure_.special_edges.size());
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - started);
    return result;
}

RecombinationResult solve_gray(const Instance& inst, const Schedule& p1, const Schedule& p2, int q_cap) {
    return Recombination(inst, p1, p2).solve_gray(q_cap);
}

RecombinationResult solve_bruteforce(const Instance& inst, const Schedule& p1, const Schedule& p2,
                                     int q_cap) {
    return Recombination(inst, p1, p2).solve_bruteforce(q_cap);
}

} // namespace orsched
