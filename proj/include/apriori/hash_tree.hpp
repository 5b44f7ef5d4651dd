#pragma once

#include "apriori/candidate_store.hpp"

namespace apriori {

/// Hash tree: inner nodes route by h(item at depth d) into child_max_size
/// slots, leaves hold candidate lists. A leaf splits into an inner node once it
/// holds more than leaf_max_size candidates, unless it already sits at depth k.
class HashTreeStore final : public CandidateStore {
public:
    HashTreeStore(std::vector<Itemset> itemsets, std::size_t k, const StoreParams& params);
    HashTreeStore(std::vector<Item> sorted_flat, std::size_t k, const StoreParams& params);

    StoreKind kind() const noexcept override { return StoreKind::HashTree; }
    std::unique_ptr<CandidateStore> apriori_gen() const override;
    std::unique_ptr<SubsetMatcher> matcher() const override;

    struct Node {
        std::uint32_t depth = 0;
        std::uint32_t children = kNoNode;  // offset into child slots; kNoNode for leaves
        std::vector<CandidateId> bucket;   // leaves only

        bool is_leaf() const noexcept { return children == kNoNode; }
    };

    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::uint32_t child(const Node& inner, std::size_t slot) const noexcept {
        return slots_[inner.children + slot];
    }

private:
    class Matcher;

    bool contains_impl(std::span<const Item> x) const override;
    void build();
    void insert(CandidateId id);
    void split(std::uint32_t leaf);

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> slots_;
};

}  // namespace apriori
