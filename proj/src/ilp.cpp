#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "orsched/error.hpp"
#include "orsched/exact.hpp"

namespace orsched {
namespace {

std::string var(char prefix, Job i, Job j) {
    return std::string(1, prefix) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

std::string number(Cost c) {
    std::ostringstream ss;
    if (c == std::floor(c) && std::abs(c) < 1e15) {
        ss << static_cast<long long>(c);
    } else {
        ss.precision(std::numeric_limits<double>::max_digits10);
        ss << c;
    }
    return ss.str();
}

/// Emits "name: t1 + t2 ... <sense> rhs", wrapping every few terms to keep
/// lines well under the 255-character limit some LP readers impose.
class RowWriter {
  public:
    explicit RowWriter(std::ostream& out) : out_(out) {}

    void begin(const std::string& name) {
        out_ << ' ' << name << ':';
        terms_ = 0;
    }
    void term(Cost coef, const std::string& v) {
        if (terms_ > 0 && terms_ % 8 == 0) out_ << "\n   ";
        if (coef < 0) {
            out_ << " - ";
            coef = -coef;
        } else if (terms_ > 0) {
            out_ << " + ";
        } else {
            out_ << ' ';
        }
        if (coef != 1) out_ << number(coef) << ' ';
        out_ << v;
        ++terms_;
    }
    void end(const char* sense, Cost rhs) { out_ << ' ' << sense << ' ' << number(rhs) << '\n'; }
    void end() { out_ << '\n'; }

  private:
    std::ostream& out_;
    int terms_ = 0;
};

} // namespace

void AssignmentSolution::validate() const {
    const int k = static_cast<int>(successor.size());
    if (!is_permutation_of(successor, k)) throw ContractError("successor map is not a permutation");
    for (int i = 0; i < k; ++i) {
        if (successor[i] == i) throw ContractError("successor map has a self loop");
    }
    if (y_from < 0 || y_from >= k || successor[y_from] != y_to) {
        throw ContractError("y arc does not lie on an x arc");
    }
}

AssignmentSolution encode_path(std::span<const Job> order) {
    const int k = static_cast<int>(order.size());
    require_permutation(order, k);
    if (k < 2) throw ContractError("path needs at least two jobs");
    AssignmentSolution sol;
    sol.successor.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) sol.successor[order[i]] = order[(i + 1) % k];
    sol.y_from = order[k - 1];
    sol.y_to = order[0];
    return sol;
}

int SubtourCut::lhs(const AssignmentSolution& sol) const {
    int total = 0;
    for (Job i : vertices) {
        for (Job j : vertices) {
            if (i != j && sol.successor[i] == j) ++total;
        }
    }
    return total;
}

std::vector<std::vector<Job>> find_subtours(const AssignmentSolution& sol) {
    sol.validate();
    const int k = static_cast<int>(sol.successor.size());
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<Job>> cycles;
    for (int start = 0; start < k; ++start) {
        if (seen[start]) continue;
        std::vector<Job> cycle;
        bool holds_y = false;
        for (Job v = start; !seen[v]; v = sol.successor[v]) {
            seen[v] = 1;
            cycle.push_back(v);
            if (v == sol.y_from) holds_y = true;
        }
        if (!holds_y) cycles.push_back(std::move(cycle));
    }
    return cycles;
}

SubtourCut emit_cut(std::span<const Job> cycle, int k, int index) {
    const int n = static_cast<int>(cycle.size());
    if (n < 2 || n >= k) {
        throw ContractError("subtour cut needs 2 <= |cycle| < k, got " + std::to_string(n));
    }
    std::vector<Job> vertices(cycle.begin(), cycle.end());
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end() || vertices.front() < 0 ||
        vertices.back() >= k) {
        throw ContractError("subtour cut vertices must be distinct jobs");
    }
    return SubtourCut{"subtour_" + std::to_string(index), std::move(vertices)};
}

Cost ilp_objective(const Instance& inst, const AssignmentSolution& sol) {
    Cost total = 0;
    for (int i = 0; i < static_cast<int>(sol.successor.size()); ++i) total += inst.setup(i, sol.successor[i]);
    return total - inst.setup(sol.y_from, sol.y_to);
}

void export_ilp(const Instance& inst, const std::vector<SubtourCut>& cuts, std::ostream& out) {
    const int k = inst.size();
    RowWriter row(out);

    out << "\\ Shortest Hamiltonian path model for " << inst.name() << " (k = " << k << ")\n";
    out << "Minimize\n";
    row.begin("obj");
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i != j) row.term(inst.setup(i, j), var('x', i, j));
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i != j) row.term(-inst.setup(i, j), var('y', i, j));
        }
    }
    row.end();

    out << "Subject To\n";
    for (int i = 0; i < k; ++i) {
        row.begin("out_" + std::to_string(i + 1));
        for (int j = 0; j < k; ++j) {
            if (i != j) row.term(1, var('x', i, j));
        }
        row.end("=", 1);
    }
    for (int j = 0; j < k; ++j) {
        row.begin("in_" + std::to_string(j + 1));
        for (int i = 0; i < k; ++i) {
            if (i != j) row.term(1, var('x', i, j));
        }
        row.end("=", 1);
    }
    row.begin("wrap");
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i != j) row.term(1, var('y', i, j));
        }
    }
    row.end("=", 1);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            row.begin("link_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            row.term(1, var('x', i, j));
            row.term(-1, var('y', i, j));
            row.end(">=", 0);
        }
    }
    for (const SubtourCut& cut : cuts) {
        row.begin(cut.name);
        for (Job i : cut.vertices) {
            for (Job j : cut.vertices) {
                if (i != j) row.term(1, var('x', i, j));
            }
        }
        row.end("<=", cut.rhs());
    }

    out << "Binary\n";
    for (char prefix : {'x', 'y'}) {
        int n = 0;
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                out << ' ' << var(prefix, i, j);
                if (++n % 8 == 0) out << '\n';
            }
        }
        if (n % 8 != 0) out << '\n';
    }
    out << "End\n";
}

std::string export_ilp_string(const Instance& inst, const std::vector<SubtourCut>& cuts) {
    std::ostringstream out;
    export_ilp(inst, cuts, out);
    return out.str();
}

} // namespace orsched
