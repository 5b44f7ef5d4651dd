#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "apriori/bench.hpp"
#include "apriori/trie.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace apriori;

namespace {

// Trie whose prune step also throws away the last surviving candidate.
class OverPruningTrie : public TrieStore {
public:
    using TrieStore::TrieStore;
    std::unique_ptr<CandidateStore> apriori_gen() const override {
        auto flat = generate_next();
        if (!flat.empty()) flat.resize(flat.size() - (k_ + 1));
        return std::make_unique<OverPruningTrie>(std::move(flat), k_ + 1, params_);
    }
};

std::unique_ptr<CandidateStore> mutant_factory(StoreKind kind, std::vector<Item> flat, std::size_t k,
                                               const StoreParams& params) {
    if (kind == StoreKind::Trie) return std::make_unique<OverPruningTrie>(std::move(flat), k, params);
    return build_level_store_flat(kind, std::move(flat), k, params);
}

BenchConfig tiny_matrix() {
    BenchConfig c;
    c.datasets.push_back({"dense", {}, SyntheticSpec{300, 15, 5, 1, 0.5}});
    c.datasets.push_back({"sparse", {}, SyntheticSpec{400, 40, 4, 2, 1.0}});
    c.min_sups = {0.2, 0.1, 0.05, 8};
    c.repetitions = 3;
    c.partitions = 2;
    c.workers = 2;
    return c;
}

}  // namespace

TEST_CASE("brute_force_mine examples") {
    const auto levels = brute_force_mine(fixtures::four_transactions(), 2, 3);
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].entries == std::map<Itemset, Support>{{{1}, 3}, {{2}, 3}, {{3}, 3}});
    CHECK(levels[1].entries == std::map<Itemset, Support>{{{1, 2}, 2}, {{1, 3}, 2}, {{2, 3}, 2}});

    const auto pair = brute_force_mine(TransactionDB::from_rows({{1, 2}}), 1, 2);
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].entries == std::map<Itemset, Support>{{{1}, 1}, {{2}, 1}});
    CHECK(pair[1].entries == std::map<Itemset, Support>{{{1, 2}, 1}});

    std::vector<Item> wide(21);
    for (Item i = 0; i < 21; ++i) wide[i] = i;
    const auto db = TransactionDB::from_rows({wide});
    CHECK_THROWS_AS(brute_force_mine(db, 1, 2), std::invalid_argument);
    CHECK(brute_force_mine(db, 1, 1, true).front().size() == 21);
}

TEST_CASE("diff_levels ignores trailing empty levels") {
    const std::vector<LevelResult> a{{1, {{{1}, 2}}}};
    const std::vector<LevelResult> b{{1, {{{1}, 2}}}, {2, {}}};
    CHECK(diff_levels(a, b).empty());
    const std::vector<LevelResult> c{{1, {{{1}, 3}}}};
    CHECK_FALSE(diff_levels(a, c).empty());
}

TEST_CASE("oracle check passes on the real engine") {
    OracleCheckOptions options;
    options.cases = 60;
    options.seed = 17;
    const auto result = run_oracle_check(options);
    CHECK(result.ok());
    CHECK(result.cases_run == 60);
}

TEST_CASE("oracle check catches a broken prune step") {
    OracleCheckOptions options;
    options.cases = 100;
    options.miner = [](const TransactionDB& db, const MiningConfig& c) { return mine(db, c, mutant_factory); };
    const auto result = run_oracle_check(options);
    REQUIRE_FALSE(result.ok());
    const auto& failure = *result.failure;
    CHECK(failure.kind == StoreKind::Trie);
    CHECK_FALSE(failure.difference.empty());
    CHECK(failure.db.size() <= 64);
    const auto report = failure.describe();
    CHECK(report.find("trie") != std::string::npos);
    CHECK(report.find(failure.difference) != std::string::npos);
}

TEST_CASE("benchmark matrix and CSV") {
    const auto report = run_benchmark(tiny_matrix());
    CHECK(report.rows.size() == 72);

    const auto csv = format_bench_csv(report);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == kBenchCsvHeader);
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(rows == 72);

    for (const auto& r : report.rows) {
        for (const auto& other : report.rows) {
            if (r.dataset == other.dataset && r.min_sup_spec == other.min_sup_spec) {
                CHECK(r.total_frequent_itemsets == other.total_frequent_itemsets);
                CHECK(r.levels_found == other.levels_found);
            }
        }
        CHECK(r.wall_ms_per_level.size() == r.levels_found + 1);
    }
    CHECK(report.median_ms("dense", StoreKind::Trie, "0.1"));
    CHECK_FALSE(report.median_ms("dense", StoreKind::Trie, "0.3"));

    const auto medians = format_median_csv(report);
    CHECK(std::count(medians.begin(), medians.end(), '\n') == 1 + 2 * 4 * 3);
}

TEST_CASE("hash parameter sweep") {
    auto config = tiny_matrix();
    config.datasets.resize(1);
    config.min_sups = {0.1};
    config.repetitions = 1;
    config.sweep_hash_params = true;
    const auto report = run_benchmark(config);
    CHECK(report.sweep.size() == 9);
    CHECK(format_sweep_csv(report).rfind("dataset,min_sup_spec,child_max_size,leaf_max_size", 0) == 0);
}

TEST_CASE("bench config loading") {
    const auto dir = std::filesystem::temp_directory_path() / "apriori_bench_config";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "bench.json");
        out << R"({"datasets": [{"name": "a", "path": "a.dat"},
                                {"name": "s", "synthetic": {"transactions": 10, "items": 5, "avg_width": 2}}],
                   "stores": ["trie", "hash-tree"], "min_sup": [0.5, 2], "repetitions": 2,
                   "output": "out/bench.csv"})";
    }
    const auto c = BenchConfig::load(dir / "bench.json");
    REQUIRE(c.datasets.size() == 2);
    CHECK(c.datasets[0].path == dir / "a.dat");
    CHECK(c.datasets[1].synthetic->n_transactions == 10);
    CHECK(c.stores == std::vector<StoreKind>{StoreKind::Trie, StoreKind::HashTree});
    CHECK(c.min_sups == std::vector<double>{0.5, 2});
    CHECK(c.repetitions == 2);
    CHECK(c.output == dir / "out" / "bench.csv");

    {
        std::ofstream out(dir / "bad.json");
        out << R"({"datasets": [], "stores": ["btree"], "min_sup": [1]})";
    }
    CHECK_THROWS_AS(BenchConfig::load(dir / "bad.json"), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("command line") {
    const auto dir = std::filesystem::temp_directory_path() / "apriori_cli_test";
    std::filesystem::remove_all(dir);
    const std::string cli = APRIORI_CLI;
    const auto data = dir / "in.dat";
    std::filesystem::create_directories(dir);
    write_transactions(fixtures::small_db(), data);

    const auto cmd = cli + " --input " + data.string() + " --min-sup 2 --store hashtabletrie --out " +
                     (dir / "out").string() + " --min-conf 0.6 > " + (dir / "log").string();
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(read_level(dir / "out" / "L3.txt", 3).entries ==
          std::map<Itemset, Support>{{{1, 2, 3}, 2}, {{1, 2, 5}, 2}, {{2, 3, 5}, 2}});
    CHECK(std::filesystem::exists(dir / "out" / "rules.txt"));

    const auto bad_sup = cli + " --input " + data.string() + " --min-sup 2.5 2> /dev/null";
    CHECK(WEXITSTATUS(std::system(bad_sup.c_str())) == 2);
    const auto two_modes = cli + " --input " + data.string() + " --oracle-check 3 2> /dev/null";
    CHECK(std::system(two_modes.c_str()) != 0);
    CHECK(std::system((cli + " --oracle-check 20 > /dev/null").c_str()) == 0);
    std::filesystem::remove_all(dir);
}
