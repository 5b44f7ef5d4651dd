#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "apriori/dataset.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace apriori;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "apriori_dataset_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("parse_transactions_text examples") {
    const auto db = parse_transactions_text("1 2 3\n2 3\n");
    REQUIRE(db.size() == 2);
    CHECK(db.transactions[0].items == std::vector<Item>{1, 2, 3});
    CHECK(db.transactions[1].items == std::vector<Item>{2, 3});
    CHECK(db.transactions[1].tid == 1);

    CHECK(parse_transactions_text("3 1 1 2\n").transactions[0].items == std::vector<Item>{1, 2, 3});

    const auto messy = parse_transactions_text("  4\t2  \r\n\n5\r\n   \n7 6");
    REQUIRE(messy.size() == 3);
    CHECK(messy.transactions[0].items == std::vector<Item>{2, 4});
    CHECK(messy.transactions[2].items == std::vector<Item>{6, 7});
    CHECK(messy.transactions[2].tid == 2);
}

TEST_CASE("parse errors carry the line number") {
    try {
        parse_transactions_text("1 2\n\n3 x\n", "f.dat");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("f.dat:3") == 0);
    }
    CHECK_THROWS_AS(parse_transactions_text("1 -2\n"), ParseError);
    CHECK_THROWS_AS(parse_transactions_text("99999999999\n"), ParseError);
    CHECK_THROWS_AS(parse_transactions_text("1.5\n"), ParseError);
    try {
        parse_transactions("/nonexistent/apriori/file.dat");
        FAIL("expected an I/O error");
    } catch (const IoError& e) {
        CHECK(e.path() == fs::path("/nonexistent/apriori/file.dat"));
    }
}

TEST_CASE("dataset_stats") {
    const auto s = dataset_stats(parse_transactions_text("1 2 3\n2 3\n9\n"));
    CHECK(s.transactions == 3);
    CHECK(s.distinct_items == 4);
    CHECK(s.avg_width == doctest::Approx(2.0));
    CHECK(s.max_width == 3);

    const auto empty = dataset_stats(TransactionDB{});
    CHECK(empty.transactions == 0);
    CHECK(empty.distinct_items == 0);
    CHECK(empty.avg_width == 0);
}

TEST_CASE("write_level format") {
    const auto dir = scratch("levels");
    const LevelResult two{2, {{{1, 3}, 2}, {{1, 2}, 2}}};
    const auto path = write_level(two, dir);
    CHECK(path == dir / "L2.txt");
    CHECK(slurp(path) == "1 2\t2\n1 3\t2\n");

    const auto empty_path = write_level(LevelResult{4, {}}, dir);
    CHECK(fs::exists(empty_path));
    CHECK(slurp(empty_path).empty());

    CHECK(format_level(LevelResult{2, {{{2, 3}, 1}, {{1, 9}, 1}}}) == "1 9\t1\n2 3\t1\n");
    CHECK(format_level(LevelResult{2, {{{10, 11}, 1}, {{9, 12}, 1}}}) == "9 12\t1\n10 11\t1\n");
}

TEST_CASE("level and transaction round trips") {
    const auto dir = scratch("roundtrip");
    std::mt19937_64 rng(3);
    for (int round = 0; round < 10; ++round) {
        const auto db = fixtures::random_db(rng, 30, 40, 0.2);
        TransactionDB non_empty;
        for (const auto& t : db.transactions)
            if (!t.items.empty()) non_empty.transactions.push_back({non_empty.size(), t.items});
        write_transactions(non_empty, dir / "db.dat");
        const auto back = parse_transactions(dir / "db.dat");
        REQUIRE(back.size() == non_empty.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back.transactions[i].items == non_empty.transactions[i].items);
            CHECK(back.transactions[i].tid == i);
        }

        LevelResult level{3, {}};
        for (int i = 0; i < 25; ++i) {
            auto items = fixtures::random_sorted(rng, 30, 0.15);
            if (items.size() < 3) continue;
            items.resize(3);
            level.entries[Itemset(items)] = static_cast<Support>(rng() % 1000 + 1);
        }
        CHECK(read_level(write_level(level, dir), 3) == level);
    }
}

TEST_CASE("write_rules format") {
    const auto dir = scratch("rules");
    const std::vector<AssociationRule> rules{{{1}, {2}, 2, 3}, {{1, 2}, {3}, 1, 2}};
    CHECK(slurp(write_rules(rules, dir)) == "1 => 2\t2\t0.666667\n1 2 => 3\t1\t0.500000\n");
}

TEST_CASE("synthetic generator") {
    const SyntheticSpec small{100, 20, 5, 42, 0};
    const auto dir = scratch("synthetic");
    write_transactions(generate_synthetic(small), dir / "a.dat");
    write_transactions(generate_synthetic(small), dir / "b.dat");
    CHECK(slurp(dir / "a.dat") == slurp(dir / "b.dat"));
    SyntheticSpec other = small;
    other.seed = 43;
    write_transactions(generate_synthetic(other), dir / "c.dat");
    CHECK(slurp(dir / "a.dat") != slurp(dir / "c.dat"));

    const auto saturated = generate_synthetic({50, 8, 8, 1, 0.5});
    for (const auto& t : saturated.transactions) CHECK(t.items == std::vector<Item>{1, 2, 3, 4, 5, 6, 7, 8});

    const auto s = dataset_stats(generate_synthetic({50000, 500, 10, 7, 1.0}));
    CHECK(s.transactions == 50000);
    CHECK(s.distinct_items <= 500);
    CHECK(s.avg_width >= 9.0);
    CHECK(s.avg_width <= 11.0);
    CHECK(s.avg_width <= static_cast<double>(s.max_width));

    CHECK_THROWS_AS(generate_synthetic({10, 5, 6, 1, 0}), ConfigError);
    CHECK_THROWS_AS(generate_synthetic({10, 5, 2, 1, -1}), ConfigError);
}

TEST_CASE("skew makes low item ids more popular") {
    const auto db = generate_synthetic({5000, 100, 5, 9, 1.0});
    std::vector<std::size_t> counts(101, 0);
    for (const auto& t : db.transactions)
        for (Item i : t.items) ++counts[i];
    CHECK(counts[1] > counts[50]);
    CHECK(counts[2] > counts[100]);
}
