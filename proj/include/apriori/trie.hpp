#pragma once

#include "apriori/candidate_store.hpp"

namespace apriori {

/// Prefix tree over the stored itemsets. Nodes and edges live in flat arrays;
/// the edges of one node are contiguous and ascending by item, with edge items
/// and edge targets in separate arrays so a linear scan touches items only.
class TrieStore : public CandidateStore {
public:
    TrieStore(std::vector<Itemset> itemsets, std::size_t k, const StoreParams& params);
    TrieStore(std::vector<Item> sorted_flat, std::size_t k, const StoreParams& params);

    StoreKind kind() const noexcept override { return StoreKind::Trie; }
    std::unique_ptr<CandidateStore> apriori_gen() const override;
    std::unique_ptr<SubsetMatcher> matcher() const override;

    struct Node {
        std::uint32_t first_edge = 0;
        std::uint32_t edge_count = 0;
        std::uint32_t depth = 0;
        CandidateId terminal = kNoNode;  // set on depth-k nodes
    };

    static constexpr std::uint32_t kRoot = 0;

    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Item> edge_items(const Node& n) const noexcept {
        return {edge_items_.data() + n.first_edge, n.edge_count};
    }
    std::span<const std::uint32_t> edge_children(const Node& n) const noexcept {
        return {edge_children_.data() + n.first_edge, n.edge_count};
    }
    std::size_t terminal_count() const noexcept;

protected:
    /// Linear scan of the edge list of `node`.
    std::uint32_t find_child(std::uint32_t node, Item item) const noexcept;

    /// Join-and-prune on the tree; result is the flat sorted candidate array.
    std::vector<Item> generate_next() const;

    std::vector<Node> nodes_;
    std::vector<Item> edge_items_;
    std::vector<std::uint32_t> edge_children_;

private:
    class Matcher;

    bool contains_impl(std::span<const Item> x) const override;
    void build();
    std::uint32_t build_node(std::size_t lo, std::size_t hi, std::uint32_t depth);
};

/// Trie whose per-node child lookup is a direct-address table indexed by item
/// id, giving a collision-free hash. Every non-terminal node owns a table of
/// item_bound slots (the number of recoded frequent items when mining).
class HashTableTrieStore final : public TrieStore {
public:
    HashTableTrieStore(std::vector<Itemset> itemsets, std::size_t k, const StoreParams& params);
    HashTableTrieStore(std::vector<Item> sorted_flat, std::size_t k, const StoreParams& params);

    StoreKind kind() const noexcept override { return StoreKind::HashTableTrie; }
    std::unique_ptr<CandidateStore> apriori_gen() const override;
    std::unique_ptr<SubsetMatcher> matcher() const override;

    Item item_bound() const noexcept { return bound_; }
    std::size_t table_cells() const noexcept { return table_.size(); }

    /// Child of `node` along `item`, or kNoNode. One table index.
    std::uint32_t lookup(std::uint32_t node, Item item) const noexcept {
        if (item >= bound_ || offsets_[node] == kNoTable) return kNoNode;
        return table_[offsets_[node] + item];
    }

private:
    class Matcher;

    bool contains_impl(std::span<const Item> x) const override;
    void build_tables();

    Item bound_ = 0;
    static constexpr std::size_t kNoTable = SIZE_MAX;
    std::vector<std::size_t> offsets_;  // per node; kNoTable for depth-k nodes
    std::vector<std::uint32_t> table_;
};

}  // namespace apriori
