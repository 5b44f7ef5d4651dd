#include "apriori/trie.hpp"

#include <algorithm>

namespace apriori {

TrieStore::TrieStore(std::vector<Itemset> itemsets, std::size_t k, const StoreParams& params)
    : CandidateStore(std::move(itemsets), k, params) {
    build();
}

TrieStore::TrieStore(std::vector<Item> sorted_flat, std::size_t k, const StoreParams& params)
    : CandidateStore(std::move(sorted_flat), k, params) {
    build();
}

void TrieStore::build() {
    nodes_.reserve(size() + 1);
    build_node(0, size(), 0);
}

std::uint32_t TrieStore::build_node(std::size_t lo, std::size_t hi, std::uint32_t depth) {
    const auto self = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{static_cast<std::uint32_t>(edge_items_.size()), 0, depth, kNoNode});
    if (depth == k_) {
        nodes_[self].terminal = static_cast<CandidateId>(lo);
        return self;
    }
    // Candidates in [lo, hi) share their first `depth` items; group by the next one.
    std::vector<std::size_t> starts;
    for (std::size_t r = lo; r < hi; ++r) {
        const Item item = candidate(static_cast<CandidateId>(r))[depth];
        if (starts.empty() || item != candidate(static_cast<CandidateId>(starts.back()))[depth]) {
            starts.push_back(r);
            edge_items_.push_back(item);
            edge_children_.push_back(kNoNode);
        }
    }
    nodes_[self].edge_count = static_cast<std::uint32_t>(starts.size());
    const std::uint32_t first = nodes_[self].first_edge;
    for (std::size_t g = 0; g < starts.size(); ++g) {
        const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : hi;
        const auto child = build_node(starts[g], end, depth + 1);
        edge_children_[first + g] = child;
    }
    return self;
}

std::size_t TrieStore::terminal_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node& n) { return n.terminal != kNoNode; }));
}

std::uint32_t TrieStore::find_child(std::uint32_t node, Item item) const noexcept {
    const Node& n = nodes_[node];
    for (std::uint32_t i = n.first_edge, end = n.first_edge + n.edge_count; i < end; ++i) {
        if (edge_items_[i] == item) return edge_children_[i];
        if (edge_items_[i] > item) break;
    }
    return kNoNode;
}

bool TrieStore::contains_impl(std::span<const Item> x) const {
    std::uint32_t at = kRoot;
    for (Item item : x) {
        at = find_child(at, item);
        if (at == kNoNode) return false;
    }
    return nodes_[at].terminal != kNoNode;
}

std::vector<Item> TrieStore::generate_next() const {
    std::vector<Item> out;
    if (empty()) return out;
    const std::size_t k = k_;
    std::vector<Item> path;
    std::vector<Item> probe(k);
    path.reserve(k + 1);

    auto extend = [&](auto& self, std::uint32_t at) -> void {
        const Node& node = nodes_[at];
        const auto items = edge_items(node);
        const auto children = edge_children(node);
        if (node.depth + 1 < k) {
            for (std::size_t i = 0; i < items.size(); ++i) {
                path.push_back(items[i]);
                self(self, children[i]);
                path.pop_back();
            }
            return;
        }
        // Children of `node` are terminals; every pair of siblings joins.
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                bool keep = true;
                for (std::size_t drop = 0; keep && drop < path.size(); ++drop) {
                    std::size_t w = 0;
                    for (std::size_t p = 0; p < path.size(); ++p) {
                        if (p != drop) probe[w++] = path[p];
                    }
                    probe[w++] = items[i];
                    probe[w] = items[j];
                    keep = contains_impl(probe);
                }
                if (!keep) continue;
                out.insert(out.end(), path.begin(), path.end());
                out.push_back(items[i]);
                out.push_back(items[j]);
            }
        }
    };
    extend(extend, kRoot);
    return out;
}

std::unique_ptr<CandidateStore> TrieStore::apriori_gen() const {
    return std::make_unique<TrieStore>(generate_next(), k_ + 1, params_);
}

class TrieStore::Matcher final : public SubsetMatcher {
public:
    explicit Matcher(const TrieStore& store) : store_(store) {}

    void count(std::span<const Item> t, std::span<Support> counts) override {
        run(t, [&](CandidateId id) { ++counts[id]; });
    }
    void collect(std::span<const Item> t, std::vector<CandidateId>& out) override {
        run(t, [&](CandidateId id) { out.push_back(id); });
    }

private:
    template <class Sink>
    void run(std::span<const Item> t, Sink&& sink) {
        if (t.size() < store_.k_ || store_.empty()) return;
        walk(kRoot, t, 0, sink);
    }

    template <class Sink>
    void walk(std::uint32_t at, std::span<const Item> t, std::size_t start, Sink& sink) {
        const Node& node = store_.nodes_[at];
        if (node.depth == store_.k_) {
            sink(node.terminal);
            return;
        }
        // Each usable item of t is searched for by a forward linear scan of
        // the sorted edge list, resuming where the previous search stopped.
        const std::size_t stop = t.size() - (store_.k_ - node.depth) + 1;
        const Item* items = store_.edge_items_.data();
        const std::uint32_t* children = store_.edge_children_.data();
        std::uint32_t e = node.first_edge;
        const std::uint32_t e_end = e + node.edge_count;
        const bool last = node.depth + 1 == store_.k_;
        for (std::size_t j = start; j < stop && e < e_end; ++j) {
            const Item x = t[j];
            while (e < e_end && items[e] < x) ++e;
            if (e == e_end) break;
            if (items[e] != x) continue;
            if (last) {
                sink(store_.nodes_[children[e]].terminal);
            } else {
                walk(children[e], t, j + 1, sink);
            }
            ++e;
        }
    }

    const TrieStore& store_;
};

std::unique_ptr<SubsetMatcher> TrieStore::matcher() const {
    return std::make_unique<Matcher>(*this);
}

HashTableTrieStore::HashTableTrieStore(std::vector<Itemset> itemsets, std::size_t k,
                                       const StoreParams& params)
    : TrieStore(std::move(itemsets), k, params) {
    build_tables();
}

HashTableTrieStore::HashTableTrieStore(std::vector<Item> sorted_flat, std::size_t k,
                                       const StoreParams& params)
    : TrieStore(std::move(sorted_flat), k, params) {
    build_tables();
}

void HashTableTrieStore::build_tables() {
    Item largest = 0;
    for (Item item : flat()) largest = std::max(largest, item);
    bound_ = std::max<Item>(params_.item_bound, empty() ? 0 : largest + 1);

    offsets_.assign(nodes_.size(), kNoTable);
    std::size_t inner = 0;
    for (const Node& node : nodes_) inner += node.depth < k_;
    table_.assign(inner * bound_, kNoNode);
    std::size_t next = 0;
    for (std::uint32_t at = 0; at < nodes_.size(); ++at) {
        const Node& node = nodes_[at];
        if (node.depth == k_) continue;
        offsets_[at] = next;
        next += bound_;
        const auto items = edge_items(node);
        const auto children = edge_children(node);
        for (std::size_t i = 0; i < items.size(); ++i) table_[offsets_[at] + items[i]] = children[i];
    }
}

bool HashTableTrieStore::contains_impl(std::span<const Item> x) const {
    std::uint32_t at = kRoot;
    for (Item item : x) {
        at = lookup(at, item);
        if (at == kNoNode) return false;
    }
    return nodes_[at].terminal != kNoNode;
}

std::unique_ptr<CandidateStore> HashTableTrieStore::apriori_gen() const {
    return std::make_unique<HashTableTrieStore>(generate_next(), k_ + 1, params_);
}

class HashTableTrieStore::Matcher final : public SubsetMatcher {
public:
    explicit Matcher(const HashTableTrieStore& store) : store_(store) {}

    void count(std::span<const Item> t, std::span<Support> counts) override {
        run(t, [&](CandidateId id) { ++counts[id]; });
    }
    void collect(std::span<const Item> t, std::vector<CandidateId>& out) override {
        run(t, [&](CandidateId id) { out.push_back(id); });
    }

private:
    template <class Sink>
    void run(std::span<const Item> t, Sink&& sink) {
        if (t.size() < store_.k_ || store_.empty()) return;
        walk(kRoot, 0, t, 0, sink);
    }

    template <class Sink>
    void walk(std::uint32_t at, std::size_t depth, std::span<const Item> t, std::size_t start,
              Sink& sink) {
        if (depth == store_.k_) {
            sink(store_.nodes_[at].terminal);
            return;
        }
        const std::size_t stop = t.size() - (store_.k_ - depth) + 1;
        const bool last = depth + 1 == store_.k_;
        for (std::size_t j = start; j < stop; ++j) {
            if (t[j] >= store_.bound_) break;
            const auto next = store_.lookup(at, t[j]);
            if (next == kNoNode) continue;
            if (last) {
                sink(store_.nodes_[next].terminal);
            } else {
                walk(next, depth + 1, t, j + 1, sink);
            }
        }
    }

    const HashTableTrieStore& store_;
};

std::unique_ptr<SubsetMatcher> HashTableTrieStore::matcher() const {
    return std::make_unique<Matcher>(*this);
}

}  // namespace apriori
