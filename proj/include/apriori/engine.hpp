#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "apriori/candidate_store.hpp"
#include "apriori/core.hpp"

namespace apriori {

/// Contiguous slices of a transaction list, ceil(n/P) transactions each (the
/// last may be short, surplus slices empty). Views only; the list must outlive it.
struct PartitionedDB {
    std::vector<std::span<const Transaction>> partitions;

    std::size_t size() const noexcept { return partitions.size(); }
    std::size_t transaction_count() const noexcept;
};

PartitionedDB partition_db(const TransactionDB& db, std::size_t partitions);

/// Runs fn(p) for every partition index on up to `workers` threads (0: all cores)
/// and returns after all of them finish.
void for_each_partition(std::size_t partitions, std::size_t workers,
                        const std::function<void(std::size_t)>& fn);

/// Frequent single items: per-partition item counts, summed by key, filtered at min_sup.
LevelResult phase1(const PartitionedDB& pdb, Support min_sup, std::size_t workers = 1);

/// Order-preserving bijection between the frequent raw items and 0..m-1.
struct ItemRecoding {
    std::unordered_map<Item, Item> forward;
    std::vector<Item> backward;

    std::size_t size() const noexcept { return backward.size(); }
    Item encode(Item raw) const { return forward.at(raw); }
    Item decode(Item dense) const { return backward.at(dense); }
};

ItemRecoding recode_items(const LevelResult& l1);

/// Drops infrequent items from every transaction and rewrites the rest in dense ids.
TransactionDB project_transactions(const TransactionDB& db, const ItemRecoding& recoding);

/// Support of every candidate, indexed by CandidateId. Transactions shorter
/// than k are skipped; partitions count into local vectors that are summed.
std::vector<Support> count_candidates(const PartitionedDB& pdb, const CandidateStore& store,
                                      std::size_t workers = 1);

/// Same counts keyed by itemset; candidates never matched are absent.
std::map<Itemset, Support> count_level(const PartitionedDB& pdb, const CandidateStore& store,
                                       std::size_t workers = 1);

LevelResult filter_frequent(const std::map<Itemset, Support>& counts, Support min_sup, std::size_t k);

struct MiningResult {
    /// levels[i] holds k = i + 1 in raw item ids. The last level is always empty.
    std::vector<LevelResult> levels;
    std::vector<double> level_ms;
    std::vector<std::size_t> candidates;  // |C_k| per level; |item universe| at k = 1
    MiningConfig config;
    Support resolved_min_sup = 0;
    std::size_t transactions = 0;

    /// Number of non-empty levels.
    std::size_t levels_found() const noexcept;
    std::size_t total_frequent() const noexcept;
    double total_ms() const noexcept;
    /// Support of a frequent itemset, or 0.
    Support support(const Itemset& x) const;
};

/// Builds the store for one level from a sorted flat array of k-item rows.
using StoreFactory = std::function<std::unique_ptr<CandidateStore>(
    StoreKind, std::vector<Item> sorted_flat, std::size_t k, const StoreParams&)>;

/// Phase 1, recoding, then level-wise generate/count/filter until a level
/// comes out empty. Writes L<k>.txt per level when config.output_dir is set.
MiningResult mine(const TransactionDB& db, const MiningConfig& config);
MiningResult mine(const TransactionDB& db, const MiningConfig& config, const StoreFactory& factory);

/// Every X => Z\X over frequent Z (|Z| >= 2) with sigma(Z)/sigma(X) >= min_conf.
/// Itemsets larger than max_itemset are skipped with a warning on stderr.
std::vector<AssociationRule> generate_rules(const MiningResult& result, double min_conf,
                                            std::size_t max_itemset = 12);

}  // namespace apriori
