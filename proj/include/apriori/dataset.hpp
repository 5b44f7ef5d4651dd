#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "apriori/core.hpp"

namespace apriori {

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& cause)
        : std::runtime_error(path.string() + ": " + cause), path_(path) {}
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    /// 1-based physical line number.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// FIMI text: one transaction per non-empty line, whitespace-separated
/// non-negative integers. Items are sorted and de-duplicated per line; the
/// ordinal among non-empty lines becomes the tid.
TransactionDB parse_transactions(const std::filesystem::path& path);
TransactionDB parse_transactions_text(std::string_view text, const std::string& source = "<text>");

void write_transactions(const TransactionDB& db, const std::filesystem::path& path);

struct DatasetStats {
    std::size_t transactions = 0;
    std::size_t distinct_items = 0;
    double avg_width = 0;
    std::size_t max_width = 0;
};

DatasetStats dataset_stats(const TransactionDB& db);

/// Level file name for level k: "L<k>.txt".
std::string level_file_name(std::size_t k);

/// Writes `dir`/L<k>.txt: items ascending and space separated, a tab, the
/// support, a newline; rows in lexicographic order. Returns the file path.
std::filesystem::path write_level(const LevelResult& level, const std::filesystem::path& dir);
std::string format_level(const LevelResult& level);
LevelResult read_level(const std::filesystem::path& path, std::size_t k);

/// rules.txt: "<antecedent> => <consequent>\t<support>\t<confidence>".
std::filesystem::path write_rules(const std::vector<AssociationRule>& rules,
                                  const std::filesystem::path& dir);

struct SyntheticSpec {
    std::size_t n_transactions = 1000;
    std::size_t n_items = 100;
    double avg_width = 10;
    std::uint64_t seed = 1;
    /// Item popularity follows rank^-skew; 0 is uniform.
    double skew = 0;
};

/// Poisson widths clamped to [1, n_items], items drawn without replacement by
/// popularity. Items are numbered 1..n_items, 1 most popular. Deterministic in
/// the spec.
TransactionDB generate_synthetic(const SyntheticSpec& spec);

}  // namespace apriori
