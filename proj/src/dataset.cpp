#include "apriori/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace apriori {

namespace fs = std::filesystem;

namespace {

bool is_blank(char c) noexcept { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return std::move(buf).str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError(path, "write failed");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir, ec.message());
}

void append_items(std::string& out, std::span<const Item> items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(items[i]);
    }
}

}  // namespace

TransactionDB parse_transactions_text(std::string_view text, const std::string& source) {
    TransactionDB db;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<Item> row;
    while (pos < text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        row.clear();
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_blank(line[i])) ++i;
            if (i == line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !is_blank(line[j])) ++j;
            const std::string_view token = line.substr(i, j - i);
            std::uint64_t value = 0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec == std::errc::result_out_of_range ||
                (ec == std::errc{} && value > std::numeric_limits<Item>::max())) {
                throw ParseError(source, line_no, "item out of range '" + std::string(token) + "'");
            }
            if (ec != std::errc{} || end != token.data() + token.size()) {
                throw ParseError(source, line_no, "not a non-negative integer '" + std::string(token) + "'");
            }
            row.push_back(static_cast<Item>(value));
            i = j;
        }
        if (row.empty()) continue;
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        db.transactions.push_back({db.transactions.size(), row});
    }
    return db;
}

TransactionDB parse_transactions(const fs::path& path) {
    return parse_transactions_text(read_file(path), path.string());
}

void write_transactions(const TransactionDB& db, const fs::path& path) {
    std::string out;
    for (const auto& t : db.transactions) {
        append_items(out, t.items);
        out += '\n';
    }
    write_file(path, out);
}

DatasetStats dataset_stats(const TransactionDB& db) {
    DatasetStats s;
    s.transactions = db.size();
    std::set<Item> items;
    std::size_t total = 0;
    for (const auto& t : db.transactions) {
        items.insert(t.items.begin(), t.items.end());
        total += t.items.size();
        s.max_width = std::max(s.max_width, t.items.size());
    }
    s.distinct_items = items.size();
    s.avg_width = s.transactions ? static_cast<double>(total) / static_cast<double>(s.transactions) : 0.0;
    return s;
}

std::string level_file_name(std::size_t k) { return "L" + std::to_string(k) + ".txt"; }

std::string format_level(const LevelResult& level) {
    std::string out;
    for (const auto& [itemset, support] : level.entries) {
        append_items(out, itemset.items());
        out += '\t';
        out += std::to_string(support);
        out += '\n';
    }
    return out;
}

fs::path write_level(const LevelResult& level, const fs::path& dir) {
    ensure_dir(dir);
    const fs::path path = dir / level_file_name(level.k);
    write_file(path, format_level(level));
    return path;
}

LevelResult read_level(const fs::path& path, std::size_t k) {
    const std::string text = read_file(path);
    LevelResult level{k, {}};
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(path.string(), line_no, "missing tab");
        auto db = parse_transactions_text(std::string_view(line).substr(0, tab), path.string());
        if (db.size() != 1 || db.transactions[0].items.size() != k) {
            throw ParseError(path.string(), line_no, "expected " + std::to_string(k) + " items");
        }
        Support support = 0;
        const std::string_view count = std::string_view(line).substr(tab + 1);
        auto [end, ec] = std::from_chars(count.data(), count.data() + count.size(), support);
        if (ec != std::errc{} || end != count.data() + count.size()) {
            throw ParseError(path.string(), line_no, "bad support '" + std::string(count) + "'");
        }
        level.entries.emplace(Itemset(std::move(db.transactions[0].items)), support);
    }
    return level;
}

fs::path write_rules(const std::vector<AssociationRule>& rules, const fs::path& dir) {
    ensure_dir(dir);
    std::string out;
    char conf[32];
    for (const auto& r : rules) {
        append_items(out, r.antecedent.items());
        out += " => ";
        append_items(out, r.consequent.items());
        out += '\t';
        out += std::to_string(r.support);
        out += '\t';
        std::snprintf(conf, sizeof conf, "%.6f", r.confidence());
        out += conf;
        out += '\n';
    }
    const fs::path path = dir / "rules.txt";
    write_file(path, out);
    return path;
}

TransactionDB generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_items < 1) throw ConfigError("synthetic spec needs n_items >= 1");
    if (!(spec.avg_width >= 1.0)) throw ConfigError("synthetic spec needs avg_width >= 1");
    if (spec.avg_width > static_cast<double>(spec.n_items)) {
        throw ConfigError("synthetic spec needs avg_width <= n_items");
    }
    if (spec.skew < 0 || !std::isfinite(spec.skew)) throw ConfigError("synthetic skew must be >= 0");
    if (spec.n_items > std::numeric_limits<Item>::max()) throw ConfigError("too many items");

    std::mt19937_64 rng(spec.seed);
    std::poisson_distribution<std::size_t> width_dist(spec.avg_width);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> weight(spec.n_items);
    for (std::size_t i = 0; i < spec.n_items; ++i) {
        weight[i] = std::pow(static_cast<double>(i + 1), -spec.skew);
    }
    const bool saturated = spec.avg_width == static_cast<double>(spec.n_items);

    TransactionDB db;
    db.transactions.reserve(spec.n_transactions);
    std::vector<std::pair<double, Item>> keys(spec.n_items);
    for (std::size_t n = 0; n < spec.n_transactions; ++n) {
        std::size_t width = saturated ? spec.n_items
                                      : std::clamp<std::size_t>(width_dist(rng), 1, spec.n_items);
        // Weighted sampling without replacement: keep the `width` largest log(u)/w keys.
        for (std::size_t i = 0; i < spec.n_items; ++i) {
            double u = unit(rng);
            while (u == 0.0) u = unit(rng);
            keys[i] = {std::log(u) / weight[i], static_cast<Item>(i + 1)};
        }
        std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(width - 1),
                         keys.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<Item> items;
        items.reserve(width);
        for (std::size_t i = 0; i < width; ++i) items.push_back(keys[i].second);
        std::sort(items.begin(), items.end());
        db.transactions.push_back({n, std::move(items)});
    }
    return db;
}

}  // namespace apriori
