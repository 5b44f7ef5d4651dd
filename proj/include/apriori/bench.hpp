#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apriori/core.hpp"
#include "apriori/dataset.hpp"
#include "apriori/engine.hpp"

namespace apriori {

/// Independent reference miner: enumerates every itemset over the item
/// universe up to max_k items and counts support by bitmask containment.
/// Returns only non-empty levels, k = 1, 2, ...
/// Refuses universes above 20 items unless forced; never accepts more than 64.
std::vector<LevelResult> brute_force_mine(const TransactionDB& db, Support min_sup,
                                          std::size_t max_k, bool force = false);

/// Signature of the miner under test; tests substitute a deliberately broken one.
using Miner = std::function<MiningResult(const TransactionDB&, const MiningConfig&)>;

struct OracleCheckOptions {
    std::size_t cases = 100;
    std::uint64_t seed = 1;
    std::size_t max_items = 12;
    std::size_t max_transactions = 64;
    Miner miner;  // empty: mine()
};

struct OracleFailure {
    std::size_t case_index = 0;
    StoreKind kind = StoreKind::Trie;
    TransactionDB db;  // shrunk reproduction
    Support min_sup = 1;
    std::size_t partitions = 1;
    std::string difference;

    std::string describe() const;
};

struct OracleCheckResult {
    std::size_t cases_run = 0;
    std::optional<OracleFailure> failure;

    bool ok() const noexcept { return !failure; }
};

/// Random small databases and thresholds, each mined with every store kind and
/// compared level by level against brute_force_mine. Stops at the first
/// disagreement and shrinks it to a minimal reproduction.
OracleCheckResult run_oracle_check(const OracleCheckOptions& options);

/// Empty when the two level lists agree on every non-empty level, otherwise
/// a description of the first differing itemset.
std::string diff_levels(const std::vector<LevelResult>& expected, const std::vector<LevelResult>& actual);

struct BenchDataset {
    std::string name;
    std::filesystem::path path;            // FIMI file, or
    std::optional<SyntheticSpec> synthetic;  // generated on the fly
};

struct BenchConfig {
    std::vector<BenchDataset> datasets;
    std::vector<StoreKind> stores{std::begin(kAllStoreKinds), std::end(kAllStoreKinds)};
    std::vector<double> min_sups;  // fractions below 1, absolute counts otherwise
    std::size_t repetitions = 3;
    std::size_t partitions = 4;
    std::size_t workers = 0;
    std::size_t child_max_size = 30;
    std::size_t leaf_max_size = 50;
    bool sweep_hash_params = false;
    std::vector<std::size_t> sweep_child_sizes{10, 30, 100};
    std::vector<std::size_t> sweep_leaf_sizes{10, 50, 200};
    std::filesystem::path output;  // CSV path; empty: no file

    /// Reads the JSON form; relative dataset paths resolve against the file's directory.
    static BenchConfig load(const std::filesystem::path& path);
};

struct BenchRow {
    std::string dataset;
    StoreKind store_kind = StoreKind::Trie;
    std::string min_sup_spec;
    Support resolved_min_sup = 0;
    std::size_t partitions = 1;
    std::size_t repetition = 0;
    std::size_t levels_found = 0;
    std::size_t total_frequent_itemsets = 0;
    double wall_ms_total = 0;
    std::vector<double> wall_ms_per_level;
};

struct SweepRow {
    std::string dataset;
    std::string min_sup_spec;
    std::size_t child_max_size = 0;
    std::size_t leaf_max_size = 0;
    std::size_t repetition = 0;
    double wall_ms_total = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<SweepRow> sweep;

    /// Median wall_ms_total over repetitions of one cell; nullopt if absent.
    std::optional<double> median_ms(const std::string& dataset, StoreKind kind,
                                    const std::string& min_sup_spec) const;
};

class BenchMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs the dataset x min_sup x repetition x store cross product one mine at a
/// time. Each cell's outputs must agree across stores and repetitions before
/// its rows enter the report; otherwise BenchMismatch.
BenchReport run_benchmark(const BenchConfig& config, std::ostream* progress = nullptr);

inline constexpr const char* kBenchCsvHeader =
    "dataset,store_kind,min_sup_spec,resolved_min_sup,partitions,repetition,levels_found,"
    "total_frequent_itemsets,wall_ms_total,wall_ms_per_level";

/// One header line plus one row per BenchRow; per-level times are ';'-joined.
std::string format_bench_csv(const BenchReport& report);
std::string format_median_csv(const BenchReport& report);
std::string format_sweep_csv(const BenchReport& report);

}  // namespace apriori
