#include "apriori/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "apriori/dataset.hpp"

namespace apriori {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t resolve_workers(std::size_t workers) {
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Per-partition item counts merged by key.
std::unordered_map<Item, Support> count_items(const PartitionedDB& pdb, std::size_t workers) {
    std::vector<std::unordered_map<Item, Support>> locals(pdb.size());
    for_each_partition(pdb.size(), workers, [&](std::size_t p) {
        auto& local = locals[p];
        for (const auto& t : pdb.partitions[p]) {
            for (Item item : t.items) ++local[item];
        }
    });
    std::unordered_map<Item, Support> merged;
    for (const auto& local : locals) {
        for (const auto& [item, count] : local) merged[item] += count;
    }
    return merged;
}

LevelResult frequent_items(const std::unordered_map<Item, Support>& counts, Support min_sup) {
    LevelResult l1{1, {}};
    for (const auto& [item, count] : counts) {
        if (count >= min_sup) l1.entries.emplace(Itemset{item}, count);
    }
    return l1;
}

}  // namespace

std::size_t PartitionedDB::transaction_count() const noexcept {
    std::size_t n = 0;
    for (const auto& p : partitions) n += p.size();
    return n;
}

PartitionedDB partition_db(const TransactionDB& db, std::size_t partitions) {
    if (partitions < 1) throw ConfigError("partitions must be >= 1");
    const std::size_t n = db.size();
    const std::size_t chunk = (n + partitions - 1) / partitions;
    PartitionedDB pdb;
    pdb.partitions.reserve(partitions);
    const std::span<const Transaction> all(db.transactions);
    for (std::size_t p = 0; p < partitions; ++p) {
        const std::size_t lo = std::min(n, p * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        pdb.partitions.push_back(all.subspan(lo, hi - lo));
    }
    return pdb;
}

void for_each_partition(std::size_t partitions, std::size_t workers,
                        const std::function<void(std::size_t)>& fn) {
    const std::size_t threads = std::min(resolve_workers(workers), partitions);
    if (threads <= 1) {
        for (std::size_t p = 0; p < partitions; ++p) fn(p);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t p; (p = next.fetch_add(1)) < partitions;) {
                try {
                    fn(p);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

LevelResult phase1(const PartitionedDB& pdb, Support min_sup, std::size_t workers) {
    return frequent_items(count_items(pdb, workers), min_sup);
}

ItemRecoding recode_items(const LevelResult& l1) {
    ItemRecoding r;
    r.backward.reserve(l1.size());
    for (const auto& [itemset, support] : l1.entries) {
        const Item raw = itemset[0];
        r.forward.emplace(raw, static_cast<Item>(r.backward.size()));
        r.backward.push_back(raw);
    }
    return r;
}

TransactionDB project_transactions(const TransactionDB& db, const ItemRecoding& recoding) {
    TransactionDB out;
    out.transactions.reserve(db.size());
    for (const auto& t : db.transactions) {
        Transaction projected{t.tid, {}};
        for (Item item : t.items) {
            if (auto it = recoding.forward.find(item); it != recoding.forward.end()) {
                projected.items.push_back(it->second);
            }
        }
        out.transactions.push_back(std::move(projected));
    }
    return out;
}

std::vector<Support> count_candidates(const PartitionedDB& pdb, const CandidateStore& store,
                                      std::size_t workers) {
    std::vector<Support> total(store.size(), 0);
    if (store.empty()) return total;
    std::vector<std::vector<Support>> locals(pdb.size());
    for_each_partition(pdb.size(), workers, [&](std::size_t p) {
        auto matcher = store.matcher();
        auto& local = locals[p];
        local.assign(store.size(), 0);
        for (const auto& t : pdb.partitions[p]) {
            if (t.items.size() >= store.k()) matcher->count(t.items, local);
        }
    });
    for (const auto& local : locals) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += local[i];
    }
    return total;
}

std::map<Itemset, Support> count_level(const PartitionedDB& pdb, const CandidateStore& store,
                                       std::size_t workers) {
    const auto counts = count_candidates(pdb, store, workers);
    std::map<Itemset, Support> out;
    for (CandidateId id = 0; id < counts.size(); ++id) {
        if (counts[id] > 0) out.emplace_hint(out.end(), store.itemset(id), counts[id]);
    }
    return out;
}

LevelResult filter_frequent(const std::map<Itemset, Support>& counts, Support min_sup, std::size_t k) {
    LevelResult level{k, {}};
    for (const auto& [itemset, count] : counts) {
        if (count >= min_sup) level.entries.emplace_hint(level.entries.end(), itemset, count);
    }
    return level;
}

std::size_t MiningResult::levels_found() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(levels.begin(), levels.end(), [](const LevelResult& l) { return !l.empty(); }));
}

std::size_t MiningResult::total_frequent() const noexcept {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
}

double MiningResult::total_ms() const noexcept {
    double ms = 0;
    for (double v : level_ms) ms += v;
    return ms;
}

Support MiningResult::support(const Itemset& x) const {
    if (x.empty() || x.size() > levels.size()) return 0;
    const auto& entries = levels[x.size() - 1].entries;
    auto it = entries.find(x);
    return it == entries.end() ? 0 : it->second;
}

MiningResult mine(const TransactionDB& db, const MiningConfig& config) {
    return mine(db, config, &build_level_store_flat);
}

MiningResult mine(const TransactionDB& db, const MiningConfig& config, const StoreFactory& factory) {
    config.validate();
    MiningResult result;
    result.config = config;
    result.transactions = db.size();
    result.resolved_min_sup = resolve_threshold(config.min_sup, db.size());
    const Support min_sup = result.resolved_min_sup;
    const std::size_t workers = resolve_workers(config.workers);
    const bool write = !config.output_dir.empty();
    if (write) {
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        if (ec) throw IoError(config.output_dir, ec.message());
    }

    auto finish_level = [&](LevelResult level, double ms, std::size_t candidates) {
        if (write) write_level(level, config.output_dir);
        result.levels.push_back(std::move(level));
        result.level_ms.push_back(ms);
        result.candidates.push_back(candidates);
    };

    auto start = Clock::now();
    const auto raw_parts = partition_db(db, config.partitions);
    const auto item_counts = count_items(raw_parts, workers);
    LevelResult l1 = frequent_items(item_counts, min_sup);
    const ItemRecoding recoding = recode_items(l1);
    const TransactionDB dense = project_transactions(db, recoding);
    const PartitionedDB parts = partition_db(dense, config.partitions);
    finish_level(std::move(l1), ms_since(start), item_counts.size());
    if (recoding.size() == 0) return result;

    const StoreParams params{config.child_max_size, config.leaf_max_size,
                             static_cast<Item>(recoding.size())};
    std::vector<Item> frequent(recoding.size());
    for (Item i = 0; i < frequent.size(); ++i) frequent[i] = i;

    for (std::size_t k = 2;; ++k) {
        start = Clock::now();
        const auto previous = factory(config.store_kind, std::move(frequent), k - 1, params);
        const auto candidates = previous->apriori_gen();
        LevelResult level{k, {}};
        frequent.clear();
        if (!candidates->empty()) {
            const auto counts = count_candidates(parts, *candidates, workers);
            std::vector<Item> raw(k);
            for (CandidateId id = 0; id < counts.size(); ++id) {
                if (counts[id] < min_sup) continue;
                const auto c = candidates->candidate(id);
                frequent.insert(frequent.end(), c.begin(), c.end());
                for (std::size_t i = 0; i < k; ++i) raw[i] = recoding.backward[c[i]];
                level.entries.emplace_hint(level.entries.end(), Itemset(raw), counts[id]);
            }
        }
        const bool done = level.empty();
        finish_level(std::move(level), ms_since(start), candidates->size());
        if (done) break;
    }
    return result;
}

std::vector<AssociationRule> generate_rules(const MiningResult& result, double min_conf,
                                            std::size_t max_itemset) {
    std::vector<AssociationRule> rules;
    std::size_t skipped = 0;
    for (std::size_t li = 1; li < result.levels.size(); ++li) {
        const std::size_t k = li + 1;
        if (k > max_itemset) {
            skipped += result.levels[li].size();
            continue;
        }
        for (const auto& [z, z_support] : result.levels[li].entries) {
            const std::uint64_t full = (std::uint64_t{1} << k) - 1;
            for (std::uint64_t mask = 1; mask < full; ++mask) {
                std::vector<Item> lhs, rhs;
                for (std::size_t i = 0; i < k; ++i) {
                    ((mask >> i) & 1 ? lhs : rhs).push_back(z[i]);
                }
                Itemset x(std::move(lhs));
                const Support x_support = result.support(x);
                if (x_support == 0) {
                    throw std::logic_error("subset " + to_string(x) + " of frequent " + to_string(z) +
                                           " missing from result");
                }
                AssociationRule rule{std::move(x), Itemset(std::move(rhs)), z_support, x_support};
                if (rule.confidence() >= min_conf) rules.push_back(std::move(rule));
            }
        }
    }
    if (skipped) {
        std::cerr << "warning: rule generation skipped " << skipped << " itemsets larger than "
                  << max_itemset << " items\n";
    }
    return rules;
}

}  // namespace apriori
