#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <sstream>

#include "apriori/bench.hpp"

namespace apriori {

std::vector<LevelResult> brute_force_mine(const TransactionDB& db, Support min_sup,
                                          std::size_t max_k, bool force) {
    const std::vector<Item> universe = db.item_universe();
    if (universe.size() > 64) {
        throw std::invalid_argument("brute_force_mine: " + std::to_string(universe.size()) +
                                    " distinct items exceed the 64-item bitmask limit");
    }
    if (universe.size() > 20 && !force) {
        throw std::invalid_argument("brute_force_mine: " + std::to_string(universe.size()) +
                                    " distinct items (> 20) would enumerate too many itemsets; "
                                    "pass force to run anyway");
    }
    std::map<Item, unsigned> bit;
    for (unsigned i = 0; i < universe.size(); ++i) bit[universe[i]] = i;
    std::vector<std::uint64_t> masks;
    masks.reserve(db.size());
    for (const auto& t : db.transactions) {
        std::uint64_t m = 0;
        for (Item item : t.items) m |= std::uint64_t{1} << bit[item];
        masks.push_back(m);
    }

    const std::size_t u = universe.size();
    std::vector<LevelResult> levels;
    std::vector<unsigned> pick;
    for (std::size_t k = 1; k <= std::min(max_k, u); ++k) {
        LevelResult level{k, {}};
        // Combinations of k bit positions in lexicographic order.
        pick.resize(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<unsigned>(i);
        while (true) {
            std::uint64_t m = 0;
            for (unsigned p : pick) m |= std::uint64_t{1} << p;
            Support support = 0;
            for (std::uint64_t t : masks) support += (t & m) == m;
            if (support >= min_sup) {
                std::vector<Item> items;
                for (unsigned p : pick) items.push_back(universe[p]);
                level.entries.emplace(Itemset(std::move(items)), support);
            }
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == u - k + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (level.empty()) break;
        levels.push_back(std::move(level));
    }
    return levels;
}

std::string diff_levels(const std::vector<LevelResult>& expected, const std::vector<LevelResult>& actual) {
    auto index = [](const std::vector<LevelResult>& levels) {
        std::map<std::size_t, const LevelResult*> by_k;
        for (const auto& l : levels) {
            if (!l.empty()) by_k[l.k] = &l;
        }
        return by_k;
    };
    const auto want = index(expected);
    const auto got = index(actual);
    static const LevelResult none{};
    std::size_t max_k = 0;
    if (!want.empty()) max_k = want.rbegin()->first;
    if (!got.empty()) max_k = std::max(max_k, got.rbegin()->first);
    for (std::size_t k = 1; k <= max_k; ++k) {
        const auto& w = want.contains(k) ? want.at(k)->entries : none.entries;
        const auto& g = got.contains(k) ? got.at(k)->entries : none.entries;
        for (const auto& [x, support] : w) {
            auto it = g.find(x);
            if (it == g.end()) {
                return "level " + std::to_string(k) + ": missing " + to_string(x) + " (support " +
                       std::to_string(support) + ")";
            }
            if (it->second != support) {
                return "level " + std::to_string(k) + ": " + to_string(x) + " support " +
                       std::to_string(it->second) + ", expected " + std::to_string(support);
            }
        }
        for (const auto& [x, support] : g) {
            if (!w.contains(x)) {
                return "level " + std::to_string(k) + ": unexpected " + to_string(x) + " (support " +
                       std::to_string(support) + ")";
            }
        }
    }
    return {};
}

std::string OracleFailure::describe() const {
    std::ostringstream os;
    os << "oracle mismatch in case " << case_index << " with store " << to_string(kind)
       << ", min_sup " << min_sup << ", partitions " << partitions << "\n  " << difference
       << "\n  database (" << db.size() << " transactions):\n";
    for (const auto& t : db.transactions) {
        os << "   ";
        for (Item item : t.items) os << ' ' << item;
        os << '\n';
    }
    return os.str();
}

namespace {

TransactionDB random_db(std::mt19937_64& rng, std::size_t max_items, std::size_t max_transactions) {
    std::uniform_int_distribution<std::size_t> items_dist(1, std::max<std::size_t>(1, max_items));
    std::uniform_int_distribution<std::size_t> tx_dist(1, std::max<std::size_t>(1, max_transactions));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n_items = items_dist(rng);
    const std::size_t n_tx = tx_dist(rng);
    const double density = 0.15 + 0.7 * unit(rng);
    std::vector<std::vector<Item>> rows(n_tx);
    for (auto& row : rows) {
        for (std::size_t i = 0; i < n_items; ++i) {
            if (unit(rng) < density) row.push_back(static_cast<Item>(i + 1));
        }
        if (row.empty()) row.push_back(static_cast<Item>(1 + rng() % n_items));
    }
    return TransactionDB::from_rows(rows);
}

std::string check_one(const Miner& miner, const TransactionDB& db, Support min_sup, StoreKind kind,
                      std::size_t partitions) {
    MiningConfig config;
    config.min_sup = SupportThreshold::absolute(min_sup);
    config.store_kind = kind;
    config.partitions = partitions;
    config.workers = 1;
    const auto expected = brute_force_mine(db, min_sup, db.item_universe().size());
    const auto actual = miner(db, config);
    return diff_levels(expected, actual.levels);
}

/// Greedy shrink: drop whole transactions, then single items, while the failure persists.
void shrink(OracleFailure& f, const Miner& miner) {
    auto fails = [&](const TransactionDB& db) { return !check_one(miner, db, f.min_sup, f.kind, f.partitions).empty(); };
    std::vector<std::vector<Item>> rows;
    for (const auto& t : f.db.transactions) rows.push_back(t.items);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rows.size();) {
            auto trial = rows;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (!trial.empty() && fails(TransactionDB::from_rows(trial))) {
                rows = std::move(trial);
                changed = true;
            } else {
                ++i;
            }
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < rows[i].size() && rows[i].size() > 1;) {
                auto trial = rows;
                trial[i].erase(trial[i].begin() + static_cast<std::ptrdiff_t>(j));
                if (fails(TransactionDB::from_rows(trial))) {
                    rows = std::move(trial);
                    changed = true;
                } else {
                    ++j;
                }
            }
        }
    }
    f.db = TransactionDB::from_rows(rows);
    f.difference = check_one(miner, f.db, f.min_sup, f.kind, f.partitions);
}

}  // namespace

OracleCheckResult run_oracle_check(const OracleCheckOptions& options) {
    const Miner miner = options.miner ? options.miner : Miner([](const TransactionDB& db, const MiningConfig& c) {
        return mine(db, c);
    });
    static constexpr std::size_t kPartitionChoices[] = {1, 2, 3, 4, 8};
    OracleCheckResult result;
    for (std::size_t c = 0; c < options.cases; ++c) {
        std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + c);
        const TransactionDB db = random_db(rng, options.max_items, options.max_transactions);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double u = unit(rng);
        const auto min_sup = static_cast<Support>(
            std::clamp<double>(1.0 + std::floor(u * u * static_cast<double>(db.size())), 1.0,
                               static_cast<double>(db.size())));
        const std::size_t partitions = kPartitionChoices[rng() % std::size(kPartitionChoices)];
        for (StoreKind kind : kAllStoreKinds) {
            std::string diff = check_one(miner, db, min_sup, kind, partitions);
            if (diff.empty()) continue;
            OracleFailure f{c, kind, db, min_sup, partitions, std::move(diff)};
            shrink(f, miner);
            result.failure = std::move(f);
            result.cases_run = c + 1;
            return result;
        }
        result.cases_run = c + 1;
    }
    return result;
}

}  // namespace apriori
