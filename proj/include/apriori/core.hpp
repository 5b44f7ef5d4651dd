#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apriori {

using Item = std::uint32_t;
using Support = std::uint32_t;

/// Raised for invalid user-supplied settings (thresholds, store parameters, generator specs).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Strictly ascending, duplicate-free sequence of items.
class Itemset {
public:
    Itemset() = default;
    Itemset(std::initializer_list<Item> items);
    explicit Itemset(std::vector<Item> items);

    /// Sorts and de-duplicates instead of validating.
    static Itemset normalized(std::vector<Item> items);

    std::span<const Item> items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    Item operator[](std::size_t i) const { return items_[i]; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }
    const std::vector<Item>& vec() const noexcept { return items_; }

    friend auto operator<=>(const Itemset&, const Itemset&) = default;
    friend bool operator==(const Itemset&, const Itemset&) = default;

private:
    std::vector<Item> items_;
};

std::string to_string(const Itemset& x);

struct Transaction {
    std::size_t tid = 0;
    std::vector<Item> items;
};

struct TransactionDB {
    std::vector<Transaction> transactions;

    std::size_t size() const noexcept { return transactions.size(); }
    bool empty() const noexcept { return transactions.empty(); }

    /// Distinct items over all transactions, ascending.
    std::vector<Item> item_universe() const;

    /// Builds a database from raw rows, normalizing each row and assigning ordinal tids.
    static TransactionDB from_rows(const std::vector<std::vector<Item>>& rows);
};

/// Minimum support given either as an absolute count or as a fraction of the database.
class SupportThreshold {
public:
    static SupportThreshold absolute(std::uint64_t count);
    static SupportThreshold relative(double fraction);
    /// Values below 1 are fractions; values at or above 1 must be whole counts.
    static SupportThreshold parse(double value);

    bool is_relative() const noexcept { return relative_; }
    double value() const noexcept { return value_; }
    std::string describe() const;

private:
    SupportThreshold(bool relative, double value) : relative_(relative), value_(value) {}
    bool relative_ = false;
    double value_ = 1;
};

/// Absolute count for a database of n transactions; fractions round up, result is at least 1.
Support resolve_threshold(const SupportThreshold& spec, std::size_t n);

struct LevelResult {
    std::size_t k = 0;
    std::map<Itemset, Support> entries;

    bool empty() const noexcept { return entries.empty(); }
    std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const LevelResult&, const LevelResult&) = default;
};

struct AssociationRule {
    Itemset antecedent;
    Itemset consequent;
    Support support = 0;             // sigma(antecedent u consequent)
    Support antecedent_support = 0;  // sigma(antecedent)

    double confidence() const noexcept {
        return static_cast<double>(support) / static_cast<double>(antecedent_support);
    }
    friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

enum class StoreKind { HashTree, Trie, HashTableTrie };

inline constexpr StoreKind kAllStoreKinds[] = {StoreKind::HashTree, StoreKind::Trie,
                                               StoreKind::HashTableTrie};

std::string_view to_string(StoreKind kind) noexcept;
/// Accepts hashtree / trie / hashtabletrie (and the hyphenated spellings).
std::optional<StoreKind> parse_store_kind(std::string_view name) noexcept;

struct MiningConfig {
    SupportThreshold min_sup = SupportThreshold::absolute(1);
    StoreKind store_kind = StoreKind::Trie;
    std::size_t partitions = 1;
    std::size_t workers = 0;  // 0: hardware concurrency
    std::size_t child_max_size = 30;
    std::size_t leaf_max_size = 50;
    std::optional<double> min_conf;
    std::size_t rule_max_size = 12;
    std::filesystem::path output_dir;  // empty: no level files

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// True iff every item of x occurs in t; both ascending. Single merge scan.
bool is_subset(std::span<const Item> x, std::span<const Item> t) noexcept;

/// The k subsets of x obtained by dropping one item, dropped position 0 first.
std::vector<Itemset> k_minus_one_subsets(const Itemset& x);

}  // namespace apriori
