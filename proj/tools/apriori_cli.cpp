// Command-line front end: mine a dataset, run the store benchmark matrix,
// cross-check against the brute-force oracle, or generate synthetic data.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "apriori/bench.hpp"
#include "apriori/dataset.hpp"
#include "apriori/engine.hpp"

namespace fs = std::filesystem;
using namespace apriori;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

fs::path sibling(const fs::path& csv, const std::string& suffix) {
    fs::path out = csv;
    out.replace_filename(csv.stem().string() + suffix + csv.extension().string());
    return out;
}

void print_stats(const fs::path& path, const DatasetStats& s) {
    std::printf("%s: transactions=%zu items=%zu avg_width=%.3f max_width=%zu\n", path.string().c_str(),
                s.transactions, s.distinct_items, s.avg_width, s.max_width);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-wise Apriori with hash-tree, trie and hash-table-trie candidate stores"};

    fs::path input, out_dir, bench_config, generate_path;
    double min_sup = 0;
    std::string store = "trie";
    MiningConfig defaults;
    std::size_t partitions = defaults.partitions, workers = defaults.workers;
    std::size_t child_max_size = defaults.child_max_size, leaf_max_size = defaults.leaf_max_size;
    std::optional<double> min_conf;
    std::optional<std::size_t> oracle_cases;
    std::uint64_t seed = 1;
    bool stats_only = false, sweep = false;
    SyntheticSpec gen;

    auto* mode = app.add_option_group("mode");
    auto* input_opt = mode->add_option("--input", input, "FIMI transaction file to mine")->check(CLI::ExistingFile);
    mode->add_option("--bench", bench_config, "Benchmark matrix (JSON)")->check(CLI::ExistingFile);
    mode->add_option("--oracle-check", oracle_cases, "Random databases to cross-check against the oracle");
    mode->add_option("--generate", generate_path, "Write a synthetic FIMI dataset to this path");
    mode->require_option(1);

    app.add_option("--min-sup", min_sup, "Minimum support: < 1 is a fraction, >= 1 an absolute count");
    app.add_option("--store", store, "Candidate store")
        ->check(CLI::IsMember({"hashtree", "trie", "hashtabletrie"}));
    app.add_option("--partitions", partitions, "Transaction partitions")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "Worker threads (0: all cores)");
    app.add_option("--out", out_dir, "Directory for L<k>.txt level files");
    app.add_option("--child-max-size", child_max_size, "Hash-tree fan-out")->check(CLI::Range(2, 1 << 20));
    app.add_option("--leaf-max-size", leaf_max_size, "Hash-tree leaf split threshold")->check(CLI::PositiveNumber);
    app.add_option("--min-conf", min_conf, "Emit association rules at this confidence")->check(CLI::Range(0.0, 1.0));
    app.add_option("--seed", seed, "Seed for --oracle-check and --generate");
    app.add_flag("--stats", stats_only, "With --input: print dataset statistics and exit");
    app.add_flag("--sweep-hash-params", sweep, "With --bench: also sweep hash-tree parameters");
    app.add_option("--gen-transactions", gen.n_transactions, "Synthetic transaction count");
    app.add_option("--gen-items", gen.n_items, "Synthetic item count");
    app.add_option("--gen-width", gen.avg_width, "Synthetic mean transaction width");
    app.add_option("--gen-skew", gen.skew, "Synthetic popularity skew (0: uniform)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (oracle_cases) {
            if (*oracle_cases == 0) {
                std::cerr << "warning: no cases run\n";
                return 0;
            }
            OracleCheckOptions options;
            options.cases = *oracle_cases;
            options.seed = seed;
            const auto result = run_oracle_check(options);
            if (!result.ok()) {
                std::cerr << result.failure->describe();
                return 1;
            }
            std::printf("oracle check passed: %zu cases, 3 stores each\n", result.cases_run);
            return 0;
        }

        if (!generate_path.empty()) {
            gen.seed = seed;
            const auto db = generate_synthetic(gen);
            write_transactions(db, generate_path);
            print_stats(generate_path, dataset_stats(db));
            return 0;
        }

        if (!bench_config.empty()) {
            auto config = BenchConfig::load(bench_config);
            config.sweep_hash_params = config.sweep_hash_params || sweep;
            const auto report = run_benchmark(config, &std::cerr);
            const std::string csv = format_bench_csv(report);
            if (config.output.empty()) {
                std::cout << csv;
            } else {
                write_text(config.output, csv);
                write_text(sibling(config.output, ".median"), format_median_csv(report));
                if (!report.sweep.empty()) write_text(sibling(config.output, ".sweep"), format_sweep_csv(report));
                std::printf("wrote %zu rows to %s\n", report.rows.size(), config.output.string().c_str());
            }
            std::cout << format_median_csv(report);
            return 0;
        }

        const auto db = parse_transactions(input);
        if (stats_only) {
            print_stats(input, dataset_stats(db));
            return 0;
        }
        if (min_sup <= 0) {
            std::cerr << "--min-sup is required with " << input_opt->get_name() << "\n" << app.help();
            return 2;
        }
        MiningConfig config;
        config.min_sup = SupportThreshold::parse(min_sup);
        config.store_kind = *parse_store_kind(store);
        config.partitions = partitions;
        config.workers = workers;
        config.child_max_size = child_max_size;
        config.leaf_max_size = leaf_max_size;
        config.min_conf = min_conf;
        config.output_dir = out_dir;
        config.validate();

        const auto result = mine(db, config);
        std::printf("min_sup %s resolved to %u of %zu transactions, store %s\n",
                    config.min_sup.describe().c_str(), result.resolved_min_sup, result.transactions,
                    std::string(to_string(config.store_kind)).c_str());
        for (const auto& level : result.levels) {
            const std::size_t i = level.k - 1;
            std::printf("L%zu\t%zu itemsets\t%zu candidates\t%.3f ms\n", level.k, level.size(),
                        result.candidates[i], result.level_ms[i]);
        }
        std::printf("total\t%zu itemsets\t%.3f ms\n", result.total_frequent(), result.total_ms());
        if (min_conf) {
            const auto rules = generate_rules(result, *min_conf, config.rule_max_size);
            std::printf("rules\t%zu at min_conf %g\n", rules.size(), *min_conf);
            if (!out_dir.empty()) write_rules(rules, out_dir);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
