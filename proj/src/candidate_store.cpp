#include "apriori/candidate_store.hpp"

#include <algorithm>
#include <stdexcept>

#include "apriori/hash_tree.hpp"
#include "apriori/trie.hpp"

namespace apriori {

CandidateStore::CandidateStore(std::vector<Itemset> itemsets, std::size_t k,
                               const StoreParams& params)
    : k_(k), params_(params) {
    if (k == 0) throw std::invalid_argument("candidate store requires k >= 1");
    for (const auto& x : itemsets) {
        if (x.size() != k) {
            throw std::invalid_argument("itemset " + to_string(x) + " has length " +
                                        std::to_string(x.size()) + ", store expects " +
                                        std::to_string(k));
        }
    }
    std::sort(itemsets.begin(), itemsets.end());
    if (auto dup = std::adjacent_find(itemsets.begin(), itemsets.end()); dup != itemsets.end()) {
        throw std::invalid_argument("duplicate itemset " + to_string(*dup));
    }
    flat_.reserve(itemsets.size() * k);
    for (const auto& x : itemsets) flat_.insert(flat_.end(), x.begin(), x.end());
}

CandidateStore::CandidateStore(std::vector<Item> sorted_flat, std::size_t k,
                               const StoreParams& params)
    : k_(k), params_(params), flat_(std::move(sorted_flat)) {
    if (k == 0) throw std::invalid_argument("candidate store requires k >= 1");
}

Itemset CandidateStore::itemset(CandidateId id) const {
    auto c = candidate(id);
    return Itemset(std::vector<Item>(c.begin(), c.end()));
}

std::vector<Itemset> CandidateStore::itemsets() const {
    std::vector<Itemset> out;
    out.reserve(size());
    for (CandidateId id = 0; id < size(); ++id) out.push_back(itemset(id));
    return out;
}

bool CandidateStore::contains(std::span<const Item> x) const {
    if (x.size() != k_) {
        throw std::invalid_argument("contains: itemset length " + std::to_string(x.size()) +
                                    " != store k " + std::to_string(k_));
    }
    return contains_impl(x);
}

std::vector<Itemset> CandidateStore::subset_match(std::span<const Item> t) const {
    std::vector<CandidateId> ids;
    matcher()->collect(t, ids);
    std::sort(ids.begin(), ids.end());
    std::vector<Itemset> out;
    out.reserve(ids.size());
    for (auto id : ids) out.push_back(itemset(id));
    return out;
}

std::unique_ptr<CandidateStore> build_level_store(StoreKind kind, std::vector<Itemset> itemsets,
                                                  std::size_t k, const StoreParams& params) {
    switch (kind) {
        case StoreKind::HashTree:
            return std::make_unique<HashTreeStore>(std::move(itemsets), k, params);
        case StoreKind::Trie:
            return std::make_unique<TrieStore>(std::move(itemsets), k, params);
        case StoreKind::HashTableTrie:
            return std::make_unique<HashTableTrieStore>(std::move(itemsets), k, params);
    }
    throw std::invalid_argument("unknown store kind");
}

std::unique_ptr<CandidateStore> build_level_store_flat(StoreKind kind, std::vector<Item> sorted_flat,
                                                       std::size_t k, const StoreParams& params) {
    switch (kind) {
        case StoreKind::HashTree:
            return std::make_unique<HashTreeStore>(std::move(sorted_flat), k, params);
        case StoreKind::Trie:
            return std::make_unique<TrieStore>(std::move(sorted_flat), k, params);
        case StoreKind::HashTableTrie:
            return std::make_unique<HashTableTrieStore>(std::move(sorted_flat), k, params);
    }
    throw std::invalid_argument("unknown store kind");
}

}  // namespace apriori
