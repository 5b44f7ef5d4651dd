#include "apriori/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "json.hpp"

namespace apriori {

namespace {

using json = nlohmann::json;

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TransactionDB load_dataset(const BenchDataset& d) {
    if (d.synthetic) return generate_synthetic(*d.synthetic);
    return parse_transactions(d.path);
}

MiningConfig cell_config(const BenchConfig& config, double min_sup, StoreKind kind) {
    MiningConfig c;
    c.min_sup = SupportThreshold::parse(min_sup);
    c.store_kind = kind;
    c.partitions = config.partitions;
    c.workers = config.workers;
    c.child_max_size = config.child_max_size;
    c.leaf_max_size = config.leaf_max_size;
    return c;
}

struct TimedRun {
    MiningResult result;
    double wall_ms = 0;
};

TimedRun timed_mine(const TransactionDB& db, const MiningConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    TimedRun run{mine(db, config), 0};
    run.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return run;
}

}  // namespace

BenchConfig BenchConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open bench config");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    const auto base = path.parent_path();
    BenchConfig c;
    try {
        for (const auto& d : j.at("datasets")) {
            BenchDataset ds;
            ds.name = d.at("name").get<std::string>();
            if (d.contains("synthetic")) {
                const auto& s = d.at("synthetic");
                SyntheticSpec spec;
                spec.n_transactions = s.value("transactions", spec.n_transactions);
                spec.n_items = s.value("items", spec.n_items);
                spec.avg_width = s.value("avg_width", spec.avg_width);
                spec.seed = s.value("seed", spec.seed);
                spec.skew = s.value("skew", spec.skew);
                ds.synthetic = spec;
            } else {
                ds.path = d.at("path").get<std::string>();
                if (ds.path.is_relative()) ds.path = base / ds.path;
            }
            c.datasets.push_back(std::move(ds));
        }
        if (j.contains("stores")) {
            c.stores.clear();
            for (const auto& s : j.at("stores")) {
                const auto name = s.get<std::string>();
                const auto kind = parse_store_kind(name);
                if (!kind) throw ConfigError("unknown store kind '" + name + "'");
                c.stores.push_back(*kind);
            }
        }
        c.min_sups = j.at("min_sup").get<std::vector<double>>();
        c.repetitions = j.value("repetitions", c.repetitions);
        c.partitions = j.value("partitions", c.partitions);
        c.workers = j.value("workers", c.workers);
        c.child_max_size = j.value("child_max_size", c.child_max_size);
        c.leaf_max_size = j.value("leaf_max_size", c.leaf_max_size);
        c.sweep_hash_params = j.value("sweep_hash_params", c.sweep_hash_params);
        c.sweep_child_sizes = j.value("sweep_child_sizes", c.sweep_child_sizes);
        c.sweep_leaf_sizes = j.value("sweep_leaf_sizes", c.sweep_leaf_sizes);
        if (j.contains("output")) {
            c.output = j.at("output").get<std::string>();
            if (c.output.is_relative()) c.output = base / c.output;
        }
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return c;
}

std::optional<double> BenchReport::median_ms(const std::string& dataset, StoreKind kind,
                                             const std::string& min_sup_spec) const {
    std::vector<double> times;
    for (const auto& r : rows) {
        if (r.dataset == dataset && r.store_kind == kind && r.min_sup_spec == min_sup_spec) {
            times.push_back(r.wall_ms_total);
        }
    }
    if (times.empty()) return std::nullopt;
    return median(std::move(times));
}

BenchReport run_benchmark(const BenchConfig& config, std::ostream* progress) {
    if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (config.stores.empty()) throw ConfigError("no store kinds to benchmark");
    for (double s : config.min_sups) SupportThreshold::parse(s);

    BenchReport report;
    for (const auto& dataset : config.datasets) {
        const TransactionDB db = load_dataset(dataset);
        for (double min_sup : config.min_sups) {
            const std::string spec = SupportThreshold::parse(min_sup).describe();
            std::vector<BenchRow> cell;
            std::optional<MiningResult> reference;
            for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
                for (StoreKind kind : config.stores) {
                    auto run = timed_mine(db, cell_config(config, min_sup, kind));
                    if (!reference) {
                        reference = run.result;
                    } else if (auto diff = diff_levels(reference->levels, run.result.levels); !diff.empty()) {
                        throw BenchMismatch("dataset " + dataset.name + ", min_sup " + spec + ": store " +
                                            std::string(to_string(kind)) + " repetition " +
                                            std::to_string(rep) + " disagrees with store " +
                                            std::string(to_string(config.stores.front())) + ": " + diff);
                    }
                    cell.push_back(BenchRow{dataset.name, kind, spec, run.result.resolved_min_sup,
                                            config.partitions, rep, run.result.levels_found(),
                                            run.result.total_frequent(), run.wall_ms,
                                            run.result.level_ms});
                    if (progress) {
                        *progress << dataset.name << " min_sup=" << spec << " " << to_string(kind)
                                  << " rep=" << rep << " levels=" << run.result.levels_found()
                                  << " itemsets=" << run.result.total_frequent() << '\n';
                    }
                }
            }
            // Timings leave this scope only once every run in the cell agreed.
            report.rows.insert(report.rows.end(), cell.begin(), cell.end());
            if (progress) {
                for (StoreKind kind : config.stores) {
                    *progress << dataset.name << " min_sup=" << spec << " " << to_string(kind)
                              << " median_ms=" << format_ms(*report.median_ms(dataset.name, kind, spec))
                              << '\n';
                }
            }

            if (!config.sweep_hash_params) continue;
            for (std::size_t child : config.sweep_child_sizes) {
                for (std::size_t leaf : config.sweep_leaf_sizes) {
                    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
                        auto c = cell_config(config, min_sup, StoreKind::HashTree);
                        c.child_max_size = child;
                        c.leaf_max_size = leaf;
                        auto run = timed_mine(db, c);
                        if (auto diff = diff_levels(reference->levels, run.result.levels); !diff.empty()) {
                            throw BenchMismatch("hash-tree sweep child=" + std::to_string(child) +
                                                " leaf=" + std::to_string(leaf) + ": " + diff);
                        }
                        report.sweep.push_back({dataset.name, spec, child, leaf, rep, run.wall_ms});
                        if (progress) {
                            *progress << dataset.name << " min_sup=" << spec << " sweep child=" << child
                                      << " leaf=" << leaf << " rep=" << rep
                                      << " ms=" << format_ms(run.wall_ms) << '\n';
                        }
                    }
                }
            }
        }
    }
    return report;
}

std::string format_bench_csv(const BenchReport& report) {
    std::string out = kBenchCsvHeader;
    out += '\n';
    for (const auto& r : report.rows) {
        out += r.dataset + ',' + std::string(to_string(r.store_kind)) + ',' + r.min_sup_spec + ',' +
               std::to_string(r.resolved_min_sup) + ',' + std::to_string(r.partitions) + ',' +
               std::to_string(r.repetition) + ',' + std::to_string(r.levels_found) + ',' +
               std::to_string(r.total_frequent_itemsets) + ',' + format_ms(r.wall_ms_total) + ',';
        for (std::size_t i = 0; i < r.wall_ms_per_level.size(); ++i) {
            if (i) out += ';';
            out += format_ms(r.wall_ms_per_level[i]);
        }
        out += '\n';
    }
    return out;
}

std::string format_median_csv(const BenchReport& report) {
    std::string out = "dataset,store_kind,min_sup_spec,repetitions,median_wall_ms\n";
    std::map<std::tuple<std::string, std::string, StoreKind>, std::vector<double>> cells;
    std::vector<std::tuple<std::string, std::string, StoreKind>> order;
    for (const auto& r : report.rows) {
        auto key = std::make_tuple(r.dataset, r.min_sup_spec, r.store_kind);
        if (!cells.contains(key)) order.push_back(key);
        cells[key].push_back(r.wall_ms_total);
    }
    for (const auto& key : order) {
        const auto& [dataset, spec, kind] = key;
        out += dataset + ',' + std::string(to_string(kind)) + ',' + spec + ',' +
               std::to_string(cells[key].size()) + ',' + format_ms(median(cells[key])) + '\n';
    }
    return out;
}

std::string format_sweep_csv(const BenchReport& report) {
    std::string out = "dataset,min_sup_spec,child_max_size,leaf_max_size,repetition,wall_ms_total\n";
    for (const auto& r : report.sweep) {
        out += r.dataset + ',' + r.min_sup_spec + ',' + std::to_string(r.child_max_size) + ',' +
               std::to_string(r.leaf_max_size) + ',' + std::to_string(r.repetition) + ',' +
               format_ms(r.wall_ms_total) + '\n';
    }
    return out;
}

}  // namespace apriori
