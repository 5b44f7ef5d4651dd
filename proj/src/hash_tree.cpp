#include "apriori/hash_tree.hpp"

#include <algorithm>

namespace apriori {

namespace {

void check_params(const StoreParams& p) {
    if (p.child_max_size < 2) throw ConfigError("child_max_size must be >= 2");
    if (p.leaf_max_size < 1) throw ConfigError("leaf_max_size must be >= 1");
}

}  // namespace

HashTreeStore::HashTreeStore(std::vector<Itemset> itemsets, std::size_t k,
                             const StoreParams& params)
    : CandidateStore(std::move(itemsets), k, params) {
    check_params(params);
    build();
}

HashTreeStore::HashTreeStore(std::vector<Item> sorted_flat, std::size_t k,
                             const StoreParams& params)
    : CandidateStore(std::move(sorted_flat), k, params) {
    check_params(params);
    build();
}

void HashTreeStore::build() {
    nodes_.push_back(Node{});
    for (CandidateId id = 0; id < size(); ++id) insert(id);
}

void HashTreeStore::insert(CandidateId id) {
    const auto c = candidate(id);
    std::uint32_t at = 0;
    while (!nodes_[at].is_leaf()) {
        const Node& inner = nodes_[at];
        const std::size_t slot = inner.children + hash_child_index(c[inner.depth],
                                                                   params_.child_max_size);
        if (slots_[slot] == kNoNode) {
            const auto leaf = static_cast<std::uint32_t>(nodes_.size());
            nodes_.push_back(Node{inner.depth + 1, kNoNode, {}});
            slots_[slot] = leaf;
        }
        at = slots_[slot];
    }
    nodes_[at].bucket.push_back(id);
    // Leaves at depth k have no item left to route on and keep growing.
    if (nodes_[at].bucket.size() > params_.leaf_max_size && nodes_[at].depth < k_) split(at);
}

void HashTreeStore::split(std::uint32_t leaf) {
    std::vector<CandidateId> moved = std::move(nodes_[leaf].bucket);
    nodes_[leaf].bucket.clear();
    nodes_[leaf].children = static_cast<std::uint32_t>(slots_.size());
    slots_.resize(slots_.size() + params_.child_max_size, kNoNode);
    // Re-inserting walks down from the root; the path to `leaf` is unchanged.
    for (auto id : moved) insert(id);
}

bool HashTreeStore::contains_impl(std::span<const Item> x) const {
    std::uint32_t at = 0;
    while (!nodes_[at].is_leaf()) {
        const Node& inner = nodes_[at];
        at = child(inner, hash_child_index(x[inner.depth], params_.child_max_size));
        if (at == kNoNode) return false;
    }
    for (auto id : nodes_[at].bucket) {
        const auto c = candidate(id);
        if (std::equal(c.begin(), c.end(), x.begin())) return true;
    }
    return false;
}

class HashTreeStore::Matcher final : public SubsetMatcher {
public:
    explicit Matcher(const HashTreeStore& store) : store_(store), stamps_(store.nodes_.size(), 0) {}

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
        // Colliding transaction items can route to one leaf twice; the stamp
        // makes each leaf's candidates checked once per transaction.
        if (++epoch_ == 0) {
            std::fill(stamps_.begin(), stamps_.end(), 0);
            epoch_ = 1;
        }
        walk(0, t, 0, sink);
    }

    template <class Sink>
    void walk(std::uint32_t at, std::span<const Item> t, std::size_t start, Sink& sink) {
        const Node& node = store_.nodes_[at];
        if (node.is_leaf()) {
            if (stamps_[at] == epoch_) return;
            stamps_[at] = epoch_;
            for (auto id : node.bucket) {
                if (is_subset(store_.candidate(id), t)) sink(id);
            }
            return;
        }
        const std::size_t last = t.size() - (store_.k_ - node.depth);
        for (std::size_t j = start; j <= last; ++j) {
            const auto next =
                store_.child(node, hash_child_index(t[j], store_.params_.child_max_size));
            if (next != kNoNode) walk(next, t, j + 1, sink);
        }
    }

    const HashTreeStore& store_;
    std::vector<std::uint32_t> stamps_;
    std::uint32_t epoch_ = 0;
};

std::unique_ptr<SubsetMatcher> HashTreeStore::matcher() const {
    return std::make_unique<Matcher>(*this);
}

std::unique_ptr<CandidateStore> HashTreeStore::apriori_gen() const {
    const std::size_t n = size();
    const std::size_t k = k_;
    std::vector<Item> out;
    std::vector<Item> probe(k);
    std::size_t group = 0;
    while (group < n) {
        std::size_t end = group + 1;
        while (end < n && std::equal(candidate(group).begin(), candidate(group).begin() + (k - 1),
                                     candidate(end).begin())) {
            ++end;
        }
        for (std::size_t a = group; a < end; ++a) {
            const auto left = candidate(static_cast<CandidateId>(a));
            for (std::size_t b = a + 1; b < end; ++b) {
                const Item tail = candidate(static_cast<CandidateId>(b))[k - 1];
                // Dropping either of the last two items gives a join parent;
                // the remaining k-1 subsets need a lookup.
                bool keep = true;
                for (std::size_t drop = 0; keep && drop + 1 < k; ++drop) {
                    std::size_t w = 0;
                    for (std::size_t i = 0; i < k; ++i) {
                        if (i != drop) probe[w++] = left[i];
                    }
                    probe[w] = tail;
                    keep = contains_impl(probe);
                }
                if (!keep) continue;
                out.insert(out.end(), left.begin(), left.end());
                out.push_back(tail);
            }
        }
        group = end;
    }
    return std::make_unique<HashTreeStore>(std::move(out), k + 1, params_);
}

}  // namespace apriori
