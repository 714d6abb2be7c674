#include "qiscale/tree_partition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <json.hpp>

#include "qiscale/rng.hpp"

namespace qiscale {

namespace {

// BFS over a SimpleTree; returns (dist, parent).
std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> tree_bfs(
    const SimpleTree& t, std::int32_t source) {
    std::vector<std::int32_t> dist(t.size(), -1), parent(t.size(), -1);
    std::deque<std::int32_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : t.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    return {std::move(dist), std::move(parent)};
}

std::int32_t farthest(const std::vector<std::int32_t>& dist) {
    std::int32_t best = 0;
    for (std::size_t v = 1; v < dist.size(); ++v)
        if (dist[v] > dist[best]) best = static_cast<std::int32_t>(v);
    return best;
}

}  // namespace

void check_tree(const SimpleTree& t) {
    if (t.size() == 0) throw Error("empty tree");
    std::size_t edges = 0;
    for (const auto& nb : t.adj) edges += nb.size();
    if (edges != 2 * (t.size() - 1)) throw Error("wrong edge count for a tree");
    auto [dist, parent] = tree_bfs(t, 0);
    for (auto d : dist)
        if (d < 0) throw Error("tree is not connected");
}

std::vector<std::int32_t> diametral_path(const SimpleTree& t) {
    auto [d0, p0] = tree_bfs(t, 0);
    auto a = farthest(d0);
    auto [d1, p1] = tree_bfs(t, a);
    auto b = farthest(d1);
    std::vector<std::int32_t> path;
    for (auto v = b; v >= 0; v = p1[v]) path.push_back(v);
    // Orient by the smaller endpoint for determinism.
    if (path.back() < path.front()) std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::int32_t> tree_cut(const SimpleTree& t, int k) {
    if (k < 1) throw Error("tree_cut: k must be >= 1");
    auto path = diametral_path(t);
    const int d = static_cast<int>(path.size()) - 1;
    if (d <= k)
        throw DiameterTooSmall("tree_cut: diameter " + std::to_string(d) +
                               " is not > k = " + std::to_string(k));

    std::vector<std::int32_t> path_pos(t.size(), -1);
    for (std::size_t i = 0; i < path.size(); ++i) path_pos[path[i]] = static_cast<std::int32_t>(i);

    // Number u_0 first, then each hang-off component T_i (attached to the
    // interior path vertex u_i) by decreasing distance from u_i, then u_d.
    std::vector<std::int32_t> numbering;
    numbering.push_back(path[0]);
    for (int i = 1; i < d && static_cast<int>(numbering.size()) < k + 1; ++i) {
        // Collect T_i = {u_i} + its off-path subtree, with depths from u_i.
        std::vector<std::pair<std::int32_t, std::int32_t>> block;  // (depth, v)
        std::deque<std::pair<std::int32_t, std::int32_t>> queue{{0, path[i]}};
        std::vector<char> seen(t.size(), 0);
        seen[path[i]] = 1;
        while (!queue.empty()) {
            auto [dep, v] = queue.front();
            queue.pop_front();
            block.emplace_back(dep, v);
            for (auto w : t.adj[v]) {
                if (seen[w] || path_pos[w] >= 0) continue;
                seen[w] = 1;
                queue.emplace_back(dep + 1, w);
            }
        }
        std::sort(block.begin(), block.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (const auto& [dep, v] : block) numbering.push_back(v);
    }
    if (static_cast<int>(numbering.size()) < k)
        throw DiameterTooSmall("tree_cut: ran out of vertices before k");
    numbering.resize(k);
    return numbering;
}

namespace {

// Window-graph diameter of a small vertex set.
int window_diameter(const GraphWindow& win, const std::vector<std::int32_t>& piece) {
    int diam = 0;
    for (auto v : piece) {
        std::int32_t src[1] = {v};
        auto dist = win.bfs(src, -1);
        for (auto w : piece) diam = std::max(diam, static_cast<int>(dist[w]));
    }
    return diam;
}

}  // namespace

Partition partition_window(const WindowPtr& window, int k, std::uint64_t seed) {
    if (k < 1) throw Error("partition_window: k must be >= 1");
    const auto n = static_cast<std::int32_t>(window->size());

    // Seeded BFS spanning tree.
    SplitRng rng(seed, 0);
    auto root = static_cast<std::int32_t>(rng.below(n));
    SimpleTree span;
    span.adj.resize(n);
    {
        std::vector<char> seen(n, 0);
        std::deque<std::int32_t> queue{root};
        seen[root] = 1;
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (auto w : window->neighbors(v)) {
                if (seen[w]) continue;
                seen[w] = 1;
                span.adj[v].push_back(w);
                span.adj[w].push_back(v);
                queue.push_back(w);
            }
        }
    }

    Partition part;
    part.k = k;
    std::vector<char> alive(n, 1);
    std::int32_t remaining = n;

    auto add_piece = [&](std::vector<std::int32_t> piece, bool remainder) {
        part.diameters.push_back(window_diameter(*window, piece));
        if (remainder) part.remainder_index = part.pieces.size();
        part.pieces.emplace_back(window, std::move(piece));
    };

    while (remaining > 0) {
        // Compact the live subtree.
        std::vector<std::int32_t> to_global;
        std::vector<std::int32_t> to_local(n, -1);
        to_global.reserve(remaining);
        for (std::int32_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            to_local[v] = static_cast<std::int32_t>(to_global.size());
            to_global.push_back(v);
        }
        SimpleTree live;
        live.adj.resize(to_global.size());
        for (auto v : to_global)
            for (auto w : span.adj[v])
                if (alive[w]) live.adj[to_local[v]].push_back(to_local[w]);

        auto path = diametral_path(live);
        const int diam = static_cast<int>(path.size()) - 1;
        if (diam > k) {
            auto local = tree_cut(live, k);
            std::vector<std::int32_t> piece;
            piece.reserve(local.size());
            for (auto v : local) {
                piece.push_back(to_global[v]);
                alive[to_global[v]] = 0;
            }
            remaining -= static_cast<std::int32_t>(piece.size());
            add_piece(std::move(piece), false);
            continue;
        }

        // Terminal component: any subset already has diameter <= diam <= k
        // <= 2(k-1) for k >= 2 (singletons for k = 1), so chop in id order.
        std::sort(to_global.begin(), to_global.end(), [&](auto a, auto b) {
            return window->id(a) < window->id(b);
        });
        std::size_t pos = 0;
        while (pos < to_global.size()) {
            std::size_t take =
                std::min<std::size_t>(k, to_global.size() - pos);
            std::vector<std::int32_t> piece(to_global.begin() + pos,
                                            to_global.begin() + pos + take);
            add_piece(std::move(piece), take < static_cast<std::size_t>(k));
            pos += take;
        }
        break;
    }
    return part;
}

PartitionCheck verify_partition(const WindowPtr& window, const Partition& p) {
    PartitionCheck check;
    auto fail = [&](std::string why) {
        check.ok = false;
        check.failure = std::move(why);
        return check;
    };
    const auto n = window->size();
    std::vector<int> seen(n, 0);
    std::size_t total = 0;
    for (const auto& piece : p.pieces) {
        for (auto v : piece.indices()) {
            if (seen[v]) return fail("vertex covered twice: " + window->id(v));
            seen[v] = 1;
            ++total;
        }
    }
    if (total != n) return fail("pieces do not cover the window");

    int remainders = 0;
    for (std::size_t i = 0; i < p.pieces.size(); ++i) {
        bool is_rem = p.remainder_index && *p.remainder_index == i;
        if (is_rem) {
            ++remainders;
            continue;
        }
        if (static_cast<int>(p.pieces[i].size()) != p.k)
            return fail("piece " + std::to_string(i) + " has size " +
                        std::to_string(p.pieces[i].size()));
        // Recompute the diameter with a local BFS, independent of the
        // constructor's bookkeeping.
        const auto& idx = p.pieces[i].indices();
        int diam = 0;
        for (auto s : idx) {
            std::vector<std::int32_t> dist(n, -1);
            std::deque<std::int32_t> queue{s};
            dist[s] = 0;
            while (!queue.empty()) {
                auto v = queue.front();
                queue.pop_front();
                for (auto w : window->neighbors(v))
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
            }
            for (auto t : idx) diam = std::max(diam, static_cast<int>(dist[t]));
        }
        if (p.k >= 2 && diam > 2 * (p.k - 1))
            return fail("piece " + std::to_string(i) + " has diameter " +
                        std::to_string(diam));
        if (p.k == 1 && diam != 0) return fail("singleton piece with diameter > 0");
    }
    if (remainders > 1) return fail("more than one remainder piece");
    return check;
}

std::string partition_to_json(const Partition& p) {
    nlohmann::json j;
    j["k"] = p.k;
    auto pieces = nlohmann::json::array();
    for (const auto& piece : p.pieces) pieces.push_back(piece.ids());
    j["pieces"] = pieces;
    j["diameters"] = p.diameters;
    if (p.remainder_index)
        j["remainder_index"] = *p.remainder_index;
    else
        j["remainder_index"] = nullptr;
    return j.dump(2);
}

}  // namespace qiscale
