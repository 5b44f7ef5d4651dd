#include <algorithm>
#include <random>
#include <set>

#include "apriori/core.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace apriori;

TEST_CASE("is_subset examples") {
    const std::vector<Item> t{1, 2, 3, 5};
    CHECK(is_subset(Itemset{1, 2, 3}.items(), t));
    CHECK_FALSE(is_subset(Itemset{1, 4}.items(), t));
    CHECK(is_subset(Itemset{}.items(), t));
    CHECK(is_subset(Itemset{}.items(), std::vector<Item>{}));
    CHECK_FALSE(is_subset(Itemset{6}.items(), t));
}

TEST_CASE("is_subset agrees with per-element membership") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 2000; ++round) {
        const auto x = fixtures::random_sorted(rng, 16, 0.2);
        const auto t = fixtures::random_sorted(rng, 16, 0.6);
        bool naive = true;
        for (Item item : x) naive = naive && std::find(t.begin(), t.end(), item) != t.end();
        REQUIRE(is_subset(x, t) == naive);
    }
}

TEST_CASE("Itemset construction") {
    CHECK_THROWS_AS(Itemset({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Itemset({1, 1}), std::invalid_argument);
    CHECK(Itemset::normalized({3, 1, 1, 2}) == Itemset{1, 2, 3});
    CHECK(to_string(Itemset{1, 9}) == "{1 9}");
    CHECK(Itemset{1, 9} < Itemset{2, 3});
}

TEST_CASE("k_minus_one_subsets") {
    CHECK(k_minus_one_subsets({1, 2, 3}) == std::vector<Itemset>{{2, 3}, {1, 3}, {1, 2}});
    CHECK(k_minus_one_subsets({4, 7}) == std::vector<Itemset>{{7}, {4}});

    const auto four = k_minus_one_subsets({1, 2, 3, 4});
    REQUIRE(four.size() == 4);
    for (const auto& s : four) {
        CHECK(s.size() == 3);
        CHECK(is_subset(s.items(), Itemset{1, 2, 3, 4}.items()));
    }
    CHECK(std::set<Itemset>(four.begin(), four.end()).size() == 4);

    try {
        k_minus_one_subsets({5});
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()) == "subset enumeration undefined below k=2");
    }
}

TEST_CASE("resolve_threshold examples") {
    CHECK(resolve_threshold(SupportThreshold::relative(0.5), 10) == 5);
    CHECK(resolve_threshold(SupportThreshold::relative(0.001), 100) == 1);
    CHECK(resolve_threshold(SupportThreshold::absolute(3), 100) == 3);
    CHECK(resolve_threshold(SupportThreshold::relative(0.3), 10) == 3);
    CHECK(resolve_threshold(SupportThreshold::relative(0.31), 10) == 4);
    CHECK(resolve_threshold(SupportThreshold::relative(1.0), 7) == 7);
}

TEST_CASE("threshold errors") {
    CHECK_THROWS_AS(SupportThreshold::relative(0.0), ConfigError);
    CHECK_THROWS_AS(SupportThreshold::relative(1.5), ConfigError);
    CHECK_THROWS_AS(SupportThreshold::absolute(0), ConfigError);
    CHECK_THROWS_AS(SupportThreshold::parse(-1), ConfigError);
    CHECK_THROWS_AS(SupportThreshold::parse(2.5), ConfigError);
    CHECK(SupportThreshold::parse(0.25).is_relative());
    CHECK_FALSE(SupportThreshold::parse(4).is_relative());
    CHECK(SupportThreshold::parse(4).describe() == "4");
    CHECK(SupportThreshold::parse(0.25).describe() == "0.25");
}

TEST_CASE("resolve_threshold is monotone in fraction and n") {
    for (std::size_t n = 1; n <= 300; n += 7) {
        Support previous = 0;
        for (int step = 1; step <= 100; ++step) {
            const Support s = resolve_threshold(SupportThreshold::relative(step / 100.0), n);
            CHECK(s >= previous);
            CHECK(s >= 1);
            previous = s;
        }
    }
    for (int step = 1; step <= 100; step += 3) {
        Support previous = 0;
        for (std::size_t n = 1; n <= 500; ++n) {
            const Support s = resolve_threshold(SupportThreshold::relative(step / 100.0), n);
            CHECK(s >= previous);
            previous = s;
        }
    }
}

TEST_CASE("store kind names") {
    for (StoreKind kind : kAllStoreKinds) CHECK(parse_store_kind(to_string(kind)) == kind);
    CHECK(parse_store_kind("hash-table-trie") == StoreKind::HashTableTrie);
    CHECK_FALSE(parse_store_kind("btree"));
}

TEST_CASE("MiningConfig validation") {
    MiningConfig c;
    CHECK_NOTHROW(c.validate());
    c.partitions = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.child_max_size = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.leaf_max_size = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.min_conf = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
