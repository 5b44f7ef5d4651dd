#pragma once

#include <random>
#include <vector>

#include "apriori/core.hpp"

namespace fixtures {

using apriori::Item;
using apriori::Itemset;

// The ten 3-itemsets over {1..5}.
inline std::vector<Itemset> all_triples() {
    std::vector<Itemset> out;
    for (Item a = 1; a <= 5; ++a)
        for (Item b = a + 1; b <= 5; ++b)
            for (Item c = b + 1; c <= 5; ++c) out.push_back({a, b, c});
    return out;
}

inline std::vector<Itemset> all_pairs() {
    std::vector<Itemset> out;
    for (Item a = 1; a <= 5; ++a)
        for (Item b = a + 1; b <= 5; ++b) out.push_back({a, b});
    return out;
}

inline apriori::TransactionDB four_transactions() {
    return apriori::TransactionDB::from_rows({{1, 2, 3}, {1, 2}, {1, 3}, {2, 3}});
}

// Same rows as tests/data/small.dat.
inline apriori::TransactionDB small_db() {
    return apriori::TransactionDB::from_rows({{1, 2, 5}, {2, 4}, {2, 3}, {1, 2, 4}, {1, 3}, {2, 3},
                                              {1, 3}, {1, 2, 3, 5}, {1, 2, 3}, {7}, {4, 5, 9},
                                              {2, 3, 5, 9}});
}

inline std::vector<Item> random_sorted(std::mt19937_64& rng, Item universe, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<Item> out;
    for (Item i = 0; i < universe; ++i)
        if (keep(rng)) out.push_back(i);
    return out;
}

inline apriori::TransactionDB random_db(std::mt19937_64& rng, std::size_t n, Item universe, double p) {
    std::vector<std::vector<Item>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(random_sorted(rng, universe, p));
    return apriori::TransactionDB::from_rows(rows);
}

}  // namespace fixtures
