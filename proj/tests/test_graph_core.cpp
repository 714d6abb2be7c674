#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qiscale/cayley.hpp"
#include "qiscale/graph_window.hpp"
#include "qiscale/rng.hpp"

using namespace qiscale;

namespace {

VertexSet interval(const WindowPtr& win, long long lo, long long hi) {
    std::vector<std::string> ids;
    for (long long v = lo; v <= hi; ++v) ids.push_back(std::to_string(v));
    return VertexSet::from_ids(win, ids);
}

VertexSet box2(const WindowPtr& win, long long lo, long long hi) {
    std::vector<std::string> ids;
    for (long long x = lo; x <= hi; ++x)
        for (long long y = lo; y <= hi; ++y)
            ids.push_back(std::to_string(x) + "," + std::to_string(y));
    return VertexSet::from_ids(win, ids);
}

}  // namespace

TEST_CASE("ball examples") {
    auto z = enumerate_window(GroupSpec::free_abelian(1), 8);
    auto b = ball(z, z->center(), 2);
    CHECK(b.size() == 5);
    for (auto id : {"-2", "-1", "0", "1", "2"}) CHECK(b.contains(z->index_of(id)));

    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 8);
    for (int r = 1; r <= 3; ++r) {
        auto br = ball(z2, z2->center(), r);
        CHECK(static_cast<long long>(br.size()) == 2LL * r * r + 2 * r + 1);
        // Independent oracle: l1 norm from the coordinates in the id.
        for (auto id : br.ids()) {
            auto comma = id.find(',');
            long long x = std::stoll(id.substr(0, comma));
            long long y = std::stoll(id.substr(comma + 1));
            CHECK(std::abs(x) + std::abs(y) <= r);
        }
    }

    auto heis = enumerate_window(GroupSpec::heisenberg(), 4);
    CHECK(ball(heis, heis->center(), 1).size() == 5);
}

TEST_CASE("ball margin errors") {
    auto z = enumerate_window(GroupSpec::free_abelian(1), 5);
    CHECK_THROWS_AS(ball(z, z->center(), 6), OutOfInterior);
    CHECK_THROWS_AS(ball(z, z->index_of("4"), 2), OutOfInterior);
    CHECK_NOTHROW(ball(z, z->index_of("4"), 1));
}

TEST_CASE("neighborhood examples") {
    auto z = enumerate_window(GroupSpec::free_abelian(1), 12);
    auto a = interval(z, 0, 5);
    auto n1 = neighborhood(a, 1);
    CHECK(n1 == interval(z, -1, 6));
    CHECK(neighborhood(a, 0) == a);

    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 16);
    const long long N = 5;
    auto box = box2(z2, 0, N - 1);
    CHECK(static_cast<long long>(neighborhood(box, 1).size()) == N * N + 4 * N);
}

TEST_CASE("boundary examples and two-way agreement") {
    auto z = enumerate_window(GroupSpec::free_abelian(1), 16);
    auto a = interval(z, 0, 5);
    auto b1 = boundary(a, 1);
    CHECK(b1 == VertexSet::from_ids(z, {"-1", "0", "5", "6"}));

    const long long N = 8;
    auto an = interval(z, 0, N - 1);
    auto b2 = boundary(an, 2);
    CHECK(b2.size() == 8);
    CHECK(b2 == VertexSet::from_ids(z, {"-2", "-1", "0", "1", "6", "7", "8", "9"}));

    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 16);
    auto box = box2(z2, 0, 4);
    CHECK(static_cast<long long>(boundary(box, 1).size()) == 8 * 5 - 4);

    SplitRng rng(3, 0);
    for (int i = 0; i < 20; ++i) {
        auto c = static_cast<std::int32_t>(rng.below(z2->size()));
        if (z2->dist_center(c) + 6 > z2->interior_radius()) continue;
        auto s = ball(z2, c, static_cast<int>(1 + rng.below(3)));
        for (int R = 1; R <= 2; ++R)
            CHECK(boundary(s, R) == boundary_by_definition(s, R));
    }
}

TEST_CASE("boundary nesting") {
    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 14);
    SplitRng rng(11, 0);
    for (int i = 0; i < 10; ++i) {
        auto c = static_cast<std::int32_t>(rng.below(z2->size()));
        if (z2->dist_center(c) + 8 > z2->interior_radius()) continue;
        auto a = ball(z2, c, static_cast<int>(1 + rng.below(2)));
        for (int R = 1; R <= 2; ++R) {
            auto lhs = neighborhood(boundary(a, R), 1);
            auto rhs = boundary(a, R + 1);
            CHECK(set_difference(lhs, rhs).empty());
        }
    }
}

TEST_CASE("ball symmetry") {
    auto heis = enumerate_window(GroupSpec::heisenberg(), 6);
    SplitRng rng(5, 0);
    for (int i = 0; i < 200; ++i) {
        auto x = static_cast<std::int32_t>(rng.below(heis->size()));
        auto y = static_cast<std::int32_t>(rng.below(heis->size()));
        if (heis->dist_center(x) + 2 > heis->interior_radius()) continue;
        if (heis->dist_center(y) + 2 > heis->interior_radius()) continue;
        CHECK(ball(heis, x, 2).contains(y) == ball(heis, y, 2).contains(x));
    }
}

TEST_CASE("verify_geometry examples") {
    auto z = enumerate_window(GroupSpec::free_abelian(1), 6);
    auto gb = verify_geometry(z, 3);
    for (int r = 1; r <= 3; ++r) {
        CHECK(gb.v(r) == 2 * r + 1);
        CHECK(gb.V(r) == 2 * r + 1);
    }

    auto lamp = enumerate_window(GroupSpec::lamplighter(2), 4);
    auto gl = verify_geometry(lamp, 1);
    CHECK(gl.v(1) == 4);
    CHECK(gl.V(1) == 4);

    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 6);
    auto g2 = verify_geometry(z2, 2);
    for (int r = 1; r <= 2; ++r) {
        CHECK(g2.v(r) == 2 * r * r + 2 * r + 1);
        CHECK(g2.V(r) == 2 * r * r + 2 * r + 1);
    }

    CHECK(verify_geometry(z, 0).bounds.empty());
    CHECK_THROWS_AS(verify_geometry(z, 4), Error);
}

TEST_CASE("EasyOne facts on sampled sets") {
    auto z2 = enumerate_window(GroupSpec::free_abelian(2), 20);
    auto gb = verify_geometry(z2, 6);
    SplitRng rng(17, 0);
    for (int i = 0; i < 30; ++i) {
        auto c = static_cast<std::int32_t>(rng.below(z2->size()));
        if (z2->dist_center(c) + 12 > z2->interior_radius()) continue;
        auto s = ball(z2, c, static_cast<int>(rng.below(4)));
        const int R = 2 + static_cast<int>(rng.below(2));
        // (i) on thick sets (unions of 1-balls).
        auto a = neighborhood(s, 1);
        auto an = neighborhood(a, R);
        CHECK(static_cast<long long>(an.size()) * gb.v(1) <=
              gb.V(R + 3) * static_cast<long long>(a.size()));
        // (iv) on arbitrary nonempty sets.
        auto br = boundary(s, R);
        auto b2 = boundary(s, 2);
        CHECK(static_cast<long long>(br.size()) * gb.v(1) <=
              2 * gb.V(2 + R) * static_cast<long long>(b2.size()));
    }
}

TEST_CASE("set algebra") {
    auto z = enumerate_window(GroupSpec::free_abelian(1), 10);
    auto a = interval(z, -3, 2);
    auto b = interval(z, 0, 5);
    CHECK(set_union(a, b) == interval(z, -3, 5));
    CHECK(set_intersection(a, b) == interval(z, 0, 2));
    CHECK(set_difference(a, b) == interval(z, -3, -1));
}

TEST_CASE("window save/load round trip") {
    auto heis = enumerate_window(GroupSpec::heisenberg(), 3);
    std::stringstream ss;
    heis->save(ss);
    auto back = GraphWindow::load(ss);
    REQUIRE(back->size() == heis->size());
    CHECK(back->host_name() == heis->host_name());
    CHECK(back->interior_radius() == heis->interior_radius());
    CHECK(back->degree_bound() == heis->degree_bound());
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(heis->size()); ++v) {
        auto w = back->index_of(heis->id(v));
        CHECK(back->neighbors(w).size() == heis->neighbors(v).size());
        CHECK(back->dist_center(w) == heis->dist_center(v));
    }
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(std::make_shared<GraphWindow>(
                        std::vector<std::string>{"a", "b"},
                        std::vector<std::vector<std::int32_t>>{{1}, {}}, 0, 1, 2,
                        "bad"),
                    Error);  // asymmetric
    CHECK_THROWS_AS(std::make_shared<GraphWindow>(
                        std::vector<std::string>{"a", "b"},
                        std::vector<std::vector<std::int32_t>>{{}, {}}, 0, 1, 2,
                        "bad"),
                    Error);  // disconnected
}
