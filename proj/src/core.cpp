#include "apriori/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace apriori {

Itemset::Itemset(std::initializer_list<Item> items) : Itemset(std::vector<Item>(items)) {}

Itemset::Itemset(std::vector<Item> items) : items_(std::move(items)) {
    for (std::size_t i = 1; i < items_.size(); ++i) {
        if (items_[i - 1] >= items_[i]) {
            throw std::invalid_argument("itemset must be strictly ascending: " + to_string(*this));
        }
    }
}

Itemset Itemset::normalized(std::vector<Item> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    Itemset out;
    out.items_ = std::move(items);
    return out;
}

std::string to_string(const Itemset& x) {
    std::string out = "{";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(x[i]);
    }
    return out + "}";
}

std::vector<Item> TransactionDB::item_universe() const {
    std::set<Item> seen;
    for (const auto& t : transactions) seen.insert(t.items.begin(), t.items.end());
    return {seen.begin(), seen.end()};
}

TransactionDB TransactionDB::from_rows(const std::vector<std::vector<Item>>& rows) {
    TransactionDB db;
    db.transactions.reserve(rows.size());
    for (const auto& row : rows) {
        db.transactions.push_back({db.transactions.size(), Itemset::normalized(row).vec()});
    }
    return db;
}

SupportThreshold SupportThreshold::absolute(std::uint64_t count) {
    if (count < 1) throw ConfigError("absolute min_sup must be >= 1");
    return {false, static_cast<double>(count)};
}

SupportThreshold SupportThreshold::relative(double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ConfigError("relative min_sup must lie in (0, 1], got " + std::to_string(fraction));
    }
    return {true, fraction};
}

SupportThreshold SupportThreshold::parse(double value) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ConfigError("min_sup must be positive, got " + std::to_string(value));
    }
    if (value < 1.0) return relative(value);
    if (value != std::floor(value)) {
        throw ConfigError("absolute min_sup must be a whole number, got " + std::to_string(value));
    }
    return absolute(static_cast<std::uint64_t>(value));
}

std::string SupportThreshold::describe() const {
    std::ostringstream os;
    if (relative_) {
        os << value_;
    } else {
        os << static_cast<std::uint64_t>(value_);
    }
    return os.str();
}

Support resolve_threshold(const SupportThreshold& spec, std::size_t n) {
    if (!spec.is_relative()) return static_cast<Support>(spec.value());
    // Guard against 0.3 * 10 evaluating to 3.0000000000000004.
    const double scaled = spec.value() * static_cast<double>(n);
    const double rounded = std::round(scaled);
    const double count = std::abs(scaled - rounded) < 1e-9 * std::max(1.0, scaled)
                             ? rounded
                             : std::ceil(scaled);
    return std::max<Support>(1, static_cast<Support>(count));
}

std::string_view to_string(StoreKind kind) noexcept {
    switch (kind) {
        case StoreKind::HashTree: return "hashtree";
        case StoreKind::Trie: return "trie";
        case StoreKind::HashTableTrie: return "hashtabletrie";
    }
    return "?";
}

std::optional<StoreKind> parse_store_kind(std::string_view name) noexcept {
    if (name == "hashtree" || name == "hash-tree") return StoreKind::HashTree;
    if (name == "trie") return StoreKind::Trie;
    if (name == "hashtabletrie" || name == "hash-table-trie") return StoreKind::HashTableTrie;
    return std::nullopt;
}

void MiningConfig::validate() const {
    if (partitions < 1) throw ConfigError("partitions must be >= 1");
    if (child_max_size < 2) throw ConfigError("child_max_size must be >= 2");
    if (leaf_max_size < 1) throw ConfigError("leaf_max_size must be >= 1");
    if (min_conf && !(*min_conf > 0.0 && *min_conf <= 1.0)) {
        throw ConfigError("min_conf must lie in (0, 1]");
    }
    if (rule_max_size < 2) throw ConfigError("rule_max_size must be >= 2");
}

bool is_subset(std::span<const Item> x, std::span<const Item> t) noexcept {
    std::size_t j = 0;
    for (Item item : x) {
        while (j < t.size() && t[j] < item) ++j;
        if (j == t.size() || t[j] != item) return false;
        ++j;
    }
    return true;
}

std::vector<Itemset> k_minus_one_subsets(const Itemset& x) {
    if (x.size() < 2) throw std::invalid_argument("subset enumeration undefined below k=2");
    std::vector<Itemset> out;
    out.reserve(x.size());
    for (std::size_t skip = 0; skip < x.size(); ++skip) {
        std::vector<Item> items;
        items.reserve(x.size() - 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i != skip) items.push_back(x[i]);
        }
        out.emplace_back(std::move(items));
    }
    return out;
}

}  // namespace apriori
