#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "exsq/index_set.hpp"

using namespace exsq;

namespace {

/// Independent parity oracle: cycle decomposition of the permutation
/// that sorts the concatenated word.
int cycle_parity_of_concat(const IndexSet& I, const IndexSet& J) {
    std::vector<int> word(I.elements());
    word.insert(word.end(), J.elements().begin(), J.elements().end());
    std::vector<int> sorted = word;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> perm(word.size());
    for (std::size_t k = 0; k < word.size(); ++k)
        perm[k] = static_cast<int>(std::find(sorted.begin(), sorted.end(), word[k]) -
                                   sorted.begin());
    std::vector<bool> seen(perm.size(), false);
    int swaps = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t j = i;
        int len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(perm[j]);
            ++len;
        }
        swaps += len - 1;
    }
    return swaps % 2 == 0 ? 1 : -1;
}

} // namespace

TEST_CASE("subsets enumerate in lexicographic order") {
    const auto s42 = subsets(4, 2);
    REQUIRE(s42.size() == 6);
    CHECK(s42[0] == IndexSet::pair(1, 2));
    CHECK(s42[1] == IndexSet::pair(1, 3));
    CHECK(s42[2] == IndexSet::pair(1, 4));
    CHECK(s42[3] == IndexSet::pair(2, 3));
    CHECK(s42[4] == IndexSet::pair(2, 4));
    CHECK(s42[5] == IndexSet::pair(3, 4));

    const auto s33 = subsets(3, 3);
    REQUIRE(s33.size() == 1);
    CHECK(s33[0] == IndexSet({1, 2, 3}));

    const auto s54 = subsets(5, 4);
    REQUIRE(s54.size() == 5);
    CHECK(s54.front() == IndexSet({1, 2, 3, 4}));
    CHECK(s54.back() == IndexSet({2, 3, 4, 5}));

    CHECK_THROWS_AS(subsets(4, 5), ArityOutOfRange);
    CHECK_THROWS_AS(subsets(4, -1), ArityOutOfRange);
}

TEST_CASE("subset counts and sortedness") {
    for (int n = 1; n <= 8; ++n) {
        for (int m = 1; m <= n; ++m) {
            const auto all = subsets(n, m);
            REQUIRE(all.size() == binomial(n, m));
            for (std::size_t i = 1; i < all.size(); ++i) REQUIRE(all[i - 1] < all[i]);
        }
    }
}

TEST_CASE("rank and unrank") {
    CHECK(rank(IndexSet::pair(1, 2), 4) == 0);
    CHECK(rank(IndexSet::pair(3, 4), 4) == 5);
    CHECK(unrank(3, 4, 2) == IndexSet::pair(2, 3));

    // enumeration oracle
    for (int n = 2; n <= 7; ++n) {
        for (int m : {2, 3, 4}) {
            if (m > n) continue;
            const auto all = subsets(n, m);
            for (std::size_t i = 0; i < all.size(); ++i) {
                REQUIRE(rank(all[i], n) == static_cast<std::int64_t>(i));
                REQUIRE(unrank(static_cast<std::int64_t>(i), n, m) == all[i]);
            }
        }
    }
    CHECK_THROWS_AS(rank(IndexSet::pair(3, 9), 4), InvalidIndexSet);
    CHECK_THROWS_AS(unrank(6, 4, 2), InvalidIndexSet);
}

TEST_CASE("index sets validate their shape") {
    CHECK_THROWS_AS(IndexSet({2, 1}), InvalidIndexSet);
    CHECK_THROWS_AS(IndexSet({1, 1}), InvalidIndexSet);
    CHECK_THROWS_AS(IndexSet({0, 1}), InvalidIndexSet);
    CHECK_THROWS_AS(IndexSet::pair(1, 2).disjoint_union(IndexSet::pair(2, 3)),
                    OverlappingIndices);
    CHECK(IndexSet::pair(1, 2).disjoint_union(IndexSet::pair(3, 4)) == IndexSet({1, 2, 3, 4}));
}

TEST_CASE("concatenation signs") {
    CHECK(sign_concat(IndexSet::pair(1, 2), IndexSet::pair(3, 4)) == 1);
    CHECK(sign_concat(IndexSet::pair(1, 3), IndexSet::pair(2, 4)) == -1);
    CHECK(sign_concat(IndexSet::pair(1, 2), IndexSet::pair(2, 3)) == 0);

    SECTION("agrees with the cycle-decomposition oracle on 2-subsets of [6]") {
        for (const auto& I : subsets(6, 2))
            for (const auto& J : subsets(6, 2)) {
                if (!I.disjoint_from(J)) continue;
                REQUIRE(sign_concat(I, J) == cycle_parity_of_concat(I, J));
            }
    }

    SECTION("antisymmetry law sign(I,J) sign(J,I) = (-1)^{|I||J|}") {
        std::mt19937_64 rng(11);
        int done = 0;
        while (done < 500) {
            const int n = 4 + static_cast<int>(rng() % 5);
            const int u = 1 + static_cast<int>(rng() % 3);
            const int v = 1 + static_cast<int>(rng() % 3);
            if (u + v > n) continue;
            const auto I = unrank(static_cast<std::int64_t>(rng() % binomial(n, u)), n, u);
            const auto J = unrank(static_cast<std::int64_t>(rng() % binomial(n, v)), n, v);
            if (!I.disjoint_from(J)) continue;
            REQUIRE(sign_concat(I, J) * sign_concat(J, I) == ((u * v) % 2 == 0 ? 1 : -1));
            ++done;
        }
    }
}

TEST_CASE("pair partitions of a 4-set") {
    const auto p1234 = pair_partitions(IndexSet({1, 2, 3, 4}));
    CHECK(p1234[0].first == IndexSet::pair(1, 2));
    CHECK(p1234[0].second == IndexSet::pair(3, 4));
    CHECK(p1234[0].sign == 1);
    CHECK(p1234[1].first == IndexSet::pair(1, 3));
    CHECK(p1234[1].sign == -1);
    CHECK(p1234[2].first == IndexSet::pair(1, 4));
    CHECK(p1234[2].sign == 1);

    const auto p1246 = pair_partitions(IndexSet({1, 2, 4, 6}));
    CHECK(p1246[0].sign == 1);   // 12|46
    CHECK(p1246[1].sign == -1);  // 14|26
    CHECK(p1246[2].sign == 1);   // 16|24

    SECTION("the three pairs tile H exactly") {
        for (const auto& H : subsets(8, 4)) {
            for (const auto& p : pair_partitions(H)) {
                REQUIRE(p.first.disjoint_union(p.second) == H);
                REQUIRE(p.sign == sign_concat(p.first, p.second));
                REQUIRE(p.sign == sign_concat(p.second, p.first));  // unordered is well defined
            }
        }
    }
}

TEST_CASE("serialization") {
    CHECK(IndexSet::pair(1, 3).str() == "13");
    CHECK(IndexSet({1, 2, 3, 4}).str() == "1234");
    CHECK(IndexSet({1, 10}).str() == "1,10");
    CHECK(IndexSet::parse("13") == IndexSet::pair(1, 3));
    CHECK(IndexSet::parse("1,3") == IndexSet::pair(1, 3));
    CHECK(IndexSet::parse("1,10") == IndexSet({1, 10}));
    CHECK_THROWS_AS(IndexSet::parse(""), ParseError);
    CHECK_THROWS_AS(IndexSet::parse("31"), ParseError);   // not increasing
    CHECK_THROWS_AS(IndexSet::parse("1,,3"), ParseError);
    CHECK_THROWS_AS(IndexSet::parse("a3"), ParseError);
}
