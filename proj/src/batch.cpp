#include "orsched/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "orsched/error.hpp"

namespace orsched {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

} // namespace

std::string format_number(double v) {
    std::ostringstream ss;
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        ss << static_cast<long long>(v);
        return ss.str();
    }
    // Shortest precision that round-trips.
    for (int p = 6; p <= std::numeric_limits<double>::max_digits10; ++p) {
        ss.str("");
        ss.precision(p);
        ss << v;
        if (std::stod(ss.str()) == v) break;
    }
    return ss.str();
}

int q_pred(int k) {
    if (k < 1) throw ContractError("q_pred needs k >= 1");
    return static_cast<int>(std::floor(std::log(static_cast<double>(k)) / std::log(2.0)));
}

bool is_good_recombination(int q, int k) {
    const double eps = std::log2(std::exp(1.0)) - 1.0;
    return q <= (1.0 + eps) * std::log(static_cast<double>(k)) + 1e-12;
}

std::vector<DynamicsRow> aggregate_dynamics(std::span<const RunRecord> records, int k) {
    std::map<long, DynamicsRow> by_iteration;
    for (const RunRecord& r : records) {
        for (const QSample& s : r.q_samples) {
            DynamicsRow& row = by_iteration[s.iteration];
            row.iteration = s.iteration;
            row.q_cp += s.q;
            row.delta_good += is_good_recombination(s.q, k) ? 1.0 : 0.0;
            ++row.samples;
        }
    }
    std::vector<DynamicsRow> rows;
    for (auto& [it, row] : by_iteration) {
        row.q_cp /= row.samples;
        row.delta_good /= row.samples;
        rows.push_back(row);
    }
    return rows;
}

BatchReport run_batch(const Instance& inst, const BatchConfig& cfg) {
    cfg.ga.validate();
    if (cfg.runs < 1) throw ContractError("run count must be positive");
    if (cfg.threads < 1) throw ContractError("thread count must be positive");

    std::vector<RunRecord> records(static_cast<std::size_t>(cfg.runs));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (int i = next++; i < cfg.runs; i = next++) {
            try {
                GAConfig ga = cfg.ga;
                ga.rng_seed = cfg.ga.rng_seed + static_cast<std::uint64_t>(i);
                records[i] = run_ga(inst, ga);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cfg.runs;
            }
        }
    };
    const int threads = std::min(cfg.threads, cfg.runs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    BatchReport report;
    report.instance = inst.name();
    report.k = inst.size();
    report.runs = cfg.runs;
    report.target = cfg.target;
    report.q_pred = q_pred(inst.size());
    report.best = records.front().reached;

    double total_final = 0;
    double total_seconds = 0;
    int n_opt = 0;
    for (const RunRecord& r : records) {
        report.best = std::min(report.best, r.reached);
        total_final += r.reached;
        total_seconds += std::chrono::duration<double>(r.wall_time).count();
        if (cfg.target && r.reached <= *cfg.target) ++n_opt;
    }
    report.mean_final = total_final / cfg.runs;
    report.t_avg_seconds = total_seconds / cfg.runs;
    if (cfg.target) {
        report.n_opt = n_opt;
        if (n_opt > 0) report.t_avg_to_opt_seconds = report.t_avg_seconds * cfg.runs / n_opt;
    }
    report.dynamics = aggregate_dynamics(records, inst.size());
    report.records = std::move(records);
    return report;
}

void write_run_csv(const RunRecord& record, std::ostream& out) {
    out << "iteration,best_cost,q\n";
    std::size_t next_sample = 0;
    for (std::size_t t = 0; t < record.best_cost_trace.size(); ++t) {
        out << t << ',' << format_number(record.best_cost_trace[t]) << ',';
        while (next_sample < record.q_samples.size() &&
               record.q_samples[next_sample].iteration < static_cast<long>(t)) {
            ++next_sample;
        }
        if (next_sample < record.q_samples.size() &&
            record.q_samples[next_sample].iteration == static_cast<long>(t)) {
            out << record.q_samples[next_sample].q;
        }
        out << '\n';
    }
}

void write_dynamics_csv(std::span<const DynamicsRow> rows, std::ostream& out) {
    out << "iteration,q_cp,delta_good,samples\n";
    for (const DynamicsRow& r : rows) {
        out << r.iteration << ',' << format_number(r.q_cp) << ',' << format_number(r.delta_good) << ','
            << r.samples << '\n';
    }
}

void write_summary_csv(const BatchReport& report, const BatchConfig& cfg, std::ostream& out) {
    out << "instance,k,runs,iterations,population,alpha,mutation,seed,target,n_opt,best,mean_final,q_pred\n";
    out << report.instance << ',' << report.k << ',' << report.runs << ',' << cfg.ga.max_iterations << ','
        << cfg.ga.population_size << ','
        << (std::isinf(cfg.ga.replacement_parameter) ? std::string("inf")
                                                     : format_number(cfg.ga.replacement_parameter))
        << ',' << to_string(cfg.ga.mutation) << ',' << cfg.ga.rng_seed << ','
        << (report.target ? format_number(*report.target) : "") << ','
        << (report.n_opt ? std::to_string(*report.n_opt) : "") << ',' << format_number(report.best) << ','
        << format_number(report.mean_final) << ',' << report.q_pred << '\n';
}

void write_timing(const BatchReport& report, std::ostream& out) {
    out << "t_avg_seconds " << report.t_avg_seconds << '\n';
    out << "t_avg_to_opt_seconds ";
    if (report.t_avg_to_opt_seconds) {
        out << *report.t_avg_to_opt_seconds;
    } else {
        out << "undefined";
    }
    out << '\n';
}

void write_batch_outputs(const BatchReport& report, const BatchConfig& cfg, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "runs");
    std::ostringstream summary;
    write_summary_csv(report, cfg, summary);
    write_file(dir / "summary.csv", summary.str());

    std::ostringstream dynamics;
    write_dynamics_csv(report.dynamics, dynamics);
    write_file(dir / "dynamics.csv", dynamics.str());

    for (const RunRecord& r : report.records) {
        std::ostringstream run;
        write_run_csv(r, run);
        write_file(dir / "runs" / (std::to_string(r.seed) + ".csv"), run.str());
    }

    std::ostringstream timing;
    write_timing(report, timing);
    write_file(dir / "timing.txt", timing.str());
}

RunRecord read_run_csv(std::istream& in, std::uint64_t seed) {
    RunRecord record;
    record.seed = seed;
    std::string line;
    if (!std::getline(in, line) || line != "iteration,best_cost,q") throw Error("run CSV has an unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 3) throw Error("run CSV row needs 3 fields: " + line);
        const long t = std::stol(f[0]);
        if (t != static_cast<long>(record.best_cost_trace.size())) throw Error("run CSV iterations out of order");
        record.best_cost_trace.push_back(std::stod(f[1]));
        if (!f[2].empty()) record.q_samples.push_back({t, std::stoi(f[2])});
    }
    if (record.best_cost_trace.empty()) throw Error("run CSV has no rows");
    record.iterations_run = static_cast<long>(record.best_cost_trace.size()) - 1;
    record.reached = record.best_cost_trace.back();
    return record;
}

std::map<std::string, Cost> load_optima(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open optima file " + path.string());
    std::map<std::string, Cost> optima;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        auto f = split_csv(line);
        if (f.size() < 2 || f[0] == "instance") continue;
        optima[f[0]] = std::stod(f.back());
    }
    return optima;
}

} // namespace orsched
