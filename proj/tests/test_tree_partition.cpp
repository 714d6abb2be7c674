#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qiscale/cayley.hpp"
#include "qiscale/tree_partition.hpp"

using namespace qiscale;
using namespace qiscale::testing;

namespace {

SimpleTree path_tree(int n) {
    SimpleTree t;
    t.adj.resize(n);
    for (int v = 0; v + 1 < n; ++v) {
        t.adj[v].push_back(v + 1);
        t.adj[v + 1].push_back(v);
    }
    return t;
}

}  // namespace

TEST_CASE("tree_cut on a path") {
    auto t = path_tree(7);
    auto s = tree_cut(t, 3);
    CHECK(s == std::vector<std::int32_t>{0, 1, 2});
    CHECK(complement_connected(t, s));

    auto s1 = tree_cut(t, 1);
    CHECK(s1 == std::vector<std::int32_t>{0});
}

TEST_CASE("tree_cut on a spider") {
    // Center 0, three legs 1-2-3, 4-5-6, 7-8-9.
    SimpleTree t;
    t.adj.resize(10);
    auto edge = [&](int a, int b) {
        t.adj[a].push_back(b);
        t.adj[b].push_back(a);
    };
    edge(0, 1);
    edge(1, 2);
    edge(2, 3);
    edge(0, 4);
    edge(4, 5);
    edge(5, 6);
    edge(0, 7);
    edge(7, 8);
    edge(8, 9);
    auto s = tree_cut(t, 4);
    CHECK(s.size() == 4);
    CHECK(subset_tree_diameter(t, s) <= 6);
    CHECK(complement_connected(t, s));
}

TEST_CASE("tree_cut rejects small diameters") {
    auto t = path_tree(4);  // diameter 3
    CHECK_THROWS_AS(tree_cut(t, 3), DiameterTooSmall);
    CHECK_THROWS_AS(tree_cut(t, 5), DiameterTooSmall);
    CHECK_NOTHROW(tree_cut(t, 2));
}

TEST_CASE("exhaustive sweep over small trees") {
    for (int n = 2; n <= 12; ++n) {
        auto trees = all_trees(n);
        for (const auto& t : trees) {
            check_tree(t);
            int diam = static_cast<int>(diametral_path(t).size()) - 1;
            for (int k = 1; k < diam; ++k) {
                auto s = tree_cut(t, k);
                REQUIRE(static_cast<int>(s.size()) == k);
                CHECK(subset_tree_diameter(t, s) <= 2 * (k - 1));
                CHECK(complement_connected(t, s));
                if (n <= 10) CHECK(cut_exists_brute(t, k));
            }
        }
    }
}

TEST_CASE("tree counts match OEIS A000055") {
    const int expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n)
        CHECK(static_cast<int>(all_trees(n).size()) == expected[n - 1]);
}

TEST_CASE("partition examples") {
    auto path6 = make_test_window(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto p = partition_window(path6, 2, 1);
    CHECK(p.pieces.size() == 3);
    CHECK(!p.remainder_index);
    CHECK(verify_partition(path6, p).ok);
    for (auto d : p.diameters) CHECK(d <= 2);

    auto star = make_test_window(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto ps = partition_window(star, 5, 3);
    CHECK(ps.pieces.size() == 1);
    CHECK(!ps.remainder_index);
    CHECK(ps.diameters[0] == 2);
    CHECK(verify_partition(star, ps).ok);
}

TEST_CASE("partition of a random tree window") {
    auto win = random_connected_window(60, 0.0, 7);
    auto p = partition_window(win, 3, 7);
    auto check = verify_partition(win, p);
    CHECK(check.ok);
    int exact = 0;
    for (std::size_t i = 0; i < p.pieces.size(); ++i)
        if (!(p.remainder_index && *p.remainder_index == i)) ++exact;
    CHECK(exact == 20);
    for (std::size_t i = 0; i < p.pieces.size(); ++i)
        if (!(p.remainder_index && *p.remainder_index == i))
            CHECK(p.diameters[i] <= 4);
}

TEST_CASE("partition determinism") {
    auto win = random_connected_window(80, 0.05, 11);
    auto a = partition_window(win, 5, 13);
    auto b = partition_window(win, 5, 13);
    REQUIRE(a.pieces.size() == b.pieces.size());
    for (std::size_t i = 0; i < a.pieces.size(); ++i)
        CHECK(a.pieces[i].indices() == b.pieces[i].indices());
    CHECK(a.remainder_index == b.remainder_index);
}

TEST_CASE("verifier rejects corrupted partitions") {
    auto win = random_connected_window(30, 0.1, 3);
    auto p = partition_window(win, 3, 5);
    REQUIRE(verify_partition(win, p).ok);

    auto missing = p;
    missing.pieces.pop_back();
    missing.diameters.pop_back();
    if (missing.remainder_index &&
        *missing.remainder_index >= missing.pieces.size())
        missing.remainder_index.reset();
    CHECK_FALSE(verify_partition(win, missing).ok);
}

TEST_CASE("partition json shape") {
    auto win = make_test_window(4, {{0, 1}, {1, 2}, {2, 3}});
    auto p = partition_window(win, 3, 1);
    auto js = partition_to_json(p);
    CHECK(js.find("\"k\": 3") != std::string::npos);
    CHECK(js.find("\"pieces\"") != std::string::npos);
    CHECK(js.find("\"remainder_index\"") != std::string::npos);
}

TEST_CASE("partition on cayley windows") {
    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 6);
    for (int k : {2, 3, 5}) {
        auto p = partition_window(z2, k, 17);
        CHECK(verify_partition(z2, p).ok);
    }
}
