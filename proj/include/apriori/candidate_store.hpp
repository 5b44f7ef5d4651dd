#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "apriori/core.hpp"

namespace apriori {

/// Position of a candidate in the lexicographic order of its store.
using CandidateId = std::uint32_t;

inline constexpr std::uint32_t kNoNode = UINT32_MAX;

struct StoreParams {
    std::size_t child_max_size = 30;  // hash-tree fan-out
    std::size_t leaf_max_size = 50;   // hash-tree split threshold
    /// Exclusive upper bound on item ids; sizes the hash-table-trie tables.
    /// 0 derives it from the largest stored item.
    Item item_bound = 0;
};

/// h(item) = item % child_max_size
inline std::size_t hash_child_index(Item item, std::size_t child_max_size) noexcept {
    return item % child_max_size;
}

/// Per-query scratch for subset matching. One per worker thread; never shared.
class SubsetMatcher {
public:
    virtual ~SubsetMatcher() = default;

    /// Adds one to counts[id] for every candidate contained in t.
    virtual void count(std::span<const Item> t, std::span<Support> counts) = 0;
    /// Appends the ids of every candidate contained in t, each at most once.
    virtual void collect(std::span<const Item> t, std::vector<CandidateId>& out) = 0;
};

/// Storage for one level of k-itemsets, shared by the three tree layouts.
///
/// A store is immutable once constructed. Candidates are kept in a flat
/// lexicographically sorted array, so a CandidateId doubles as the rank of the
/// itemset in iteration order; the tree built on top of that array is what
/// differs between layouts. Matchers obtained from matcher() may run
/// concurrently against the same store.
class CandidateStore {
public:
    virtual ~CandidateStore() = default;
    CandidateStore(const CandidateStore&) = delete;
    CandidateStore& operator=(const CandidateStore&) = delete;

    virtual StoreKind kind() const noexcept = 0;

    std::size_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return k_ == 0 ? 0 : flat_.size() / k_; }
    bool empty() const noexcept { return flat_.empty(); }
    const StoreParams& params() const noexcept { return params_; }

    std::span<const Item> candidate(CandidateId id) const noexcept {
        return {flat_.data() + static_cast<std::size_t>(id) * k_, k_};
    }
    Itemset itemset(CandidateId id) const;
    /// All stored itemsets in ascending lexicographic order.
    std::vector<Itemset> itemsets() const;

    /// Throws std::invalid_argument when |x| != k.
    bool contains(std::span<const Item> x) const;
    bool contains(const Itemset& x) const { return contains(x.items()); }

    /// Join members sharing their first k-1 items, then drop results that have a
    /// k-subset outside this store. Returns a store of the same kind over k+1.
    virtual std::unique_ptr<CandidateStore> apriori_gen() const = 0;

    virtual std::unique_ptr<SubsetMatcher> matcher() const = 0;

    /// Every stored candidate contained in t, ascending, duplicate-free.
    std::vector<Itemset> subset_match(std::span<const Item> t) const;

protected:
    /// Validates and sorts itemsets; throws std::invalid_argument on a length
    /// mismatch, an unsorted itemset or a duplicate.
    CandidateStore(std::vector<Itemset> itemsets, std::size_t k, const StoreParams& params);
    /// Takes a flat array already known to be sorted and duplicate-free.
    CandidateStore(std::vector<Item> sorted_flat, std::size_t k, const StoreParams& params);

    virtual bool contains_impl(std::span<const Item> x) const = 0;

    const std::vector<Item>& flat() const noexcept { return flat_; }

    std::size_t k_;
    StoreParams params_;

private:
    std::vector<Item> flat_;
};

std::unique_ptr<CandidateStore> build_level_store(StoreKind kind, std::vector<Itemset> itemsets,
                                                  std::size_t k, const StoreParams& params = {});

/// As above, from a flat array of k-item rows that is already sorted and duplicate-free.
std::unique_ptr<CandidateStore> build_level_store_flat(StoreKind kind, std::vector<Item> sorted_flat,
                                                       std::size_t k, const StoreParams& params = {});

inline std::size_t candidate_count(const CandidateStore& store) noexcept { return store.size(); }

}  // namespace apriori
