#include "qiscale/realization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace qiscale {

namespace {

// Hopcroft-Karp maximum bipartite matching. adj[l] lists right indices.
struct Matcher {
    int n_left, n_right;
    const std::vector<std::vector<int>>& adj;
    std::vector<int> match_l, match_r, level;

    Matcher(int nl, int nr, const std::vector<std::vector<int>>& a)
        : n_left(nl), n_right(nr), adj(a), match_l(nl, -1), match_r(nr, -1) {}

    bool bfs_layers() {
        level.assign(n_left, -1);
        std::deque<int> queue;
        for (int l = 0; l < n_left; ++l)
            if (match_l[l] < 0) {
                level[l] = 0;
                queue.push_back(l);
            }
        bool found_free = false;
        while (!queue.empty()) {
            int l = queue.front();
            queue.pop_front();
            for (int r : adj[l]) {
                int l2 = match_r[r];
                if (l2 < 0)
                    found_free = true;
                else if (level[l2] < 0) {
                    level[l2] = level[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        return found_free;
    }

    bool augment(int l) {
        for (int r : adj[l]) {
            int l2 = match_r[r];
            if (l2 < 0 || (level[l2] == level[l] + 1 && augment(l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        level[l] = -1;
        return false;
    }

    int solve() {
        int matched = 0;
        while (bfs_layers())
            for (int l = 0; l < n_left; ++l)
                if (match_l[l] < 0 && augment(l)) ++matched;
        return matched;
    }

    // Hall certificate: left vertices reachable by alternating paths from
    // the unmatched left vertices; |N(A)| = |A| - #unmatched < |A|.
    std::vector<int> hall_witness() const {
        std::vector<char> in_a(n_left, 0);
        std::deque<int> queue;
        for (int l = 0; l < n_left; ++l)
            if (match_l[l] < 0) {
                in_a[l] = 1;
                queue.push_back(l);
            }
        while (!queue.empty()) {
            int l = queue.front();
            queue.pop_front();
            for (int r : adj[l]) {
                int l2 = match_r[r];
                if (l2 >= 0 && !in_a[l2]) {
                    in_a[l2] = 1;
                    queue.push_back(l2);
                }
            }
        }
        std::vector<int> out;
        for (int l = 0; l < n_left; ++l)
            if (in_a[l]) out.push_back(l);
        return out;
    }
};

// Trims the larger side to the smaller one's size, dropping outermost
// entries first (ties broken by id, later ids dropped first).
template <typename Key>
int equalize(std::vector<int>& side, std::size_t target, const Key& key) {
    if (side.size() <= target) return 0;
    std::sort(side.begin(), side.end(),
              [&](int a, int b) { return key(a) < key(b); });
    int dropped = static_cast<int>(side.size() - target);
    side.resize(target);
    return dropped;
}

}  // namespace

RealizationResult realize_bijection(const QIMap& f, int L_max) {
    const auto& dom = *f.domain;
    const auto& cod = *f.codomain;
    const int rho = cod.interior_radius() - L_max;
    if (rho < 0)
        throw OutOfInterior("realize_bijection: interior margin smaller than L_max");

    std::vector<int> left, right;
    for (std::int32_t x = 0; x < static_cast<std::int32_t>(dom.size()); ++x)
        if (dom.is_interior(x) && cod.dist_center(f.table[x]) <= rho)
            left.push_back(x);
    for (std::int32_t y = 0; y < static_cast<std::int32_t>(cod.size()); ++y)
        if (cod.dist_center(y) <= rho) right.push_back(y);

    RealizationResult res;
    auto target = std::min(left.size(), right.size());
    res.trimmed_domain = equalize(left, target, [&](int x) {
        return std::make_pair(cod.dist_center(f.table[x]), dom.id(x));
    });
    res.trimmed_codomain = equalize(right, target, [&](int y) {
        return std::make_pair(cod.dist_center(y), cod.id(y));
    });
    if (left.empty()) throw EmptySet("realize_bijection: empty trimmed interior");

    std::vector<int> right_pos(cod.size(), -1);
    for (std::size_t i = 0; i < right.size(); ++i) right_pos[right[i]] = static_cast<int>(i);

    // Candidate partners (right index, distance) within L_max, per left vertex.
    std::vector<std::vector<std::pair<int, int>>> candidates(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        std::int32_t src[1] = {f.table[left[i]]};
        auto dist = cod.bfs(src, L_max);
        for (std::size_t y = 0; y < cod.size(); ++y)
            if (dist[y] >= 0 && right_pos[y] >= 0)
                candidates[i].emplace_back(right_pos[y], dist[y]);
    }

    const int n = static_cast<int>(left.size());
    for (int L = 0; L <= L_max; ++L) {
        std::vector<std::vector<int>> adj(n);
        for (int i = 0; i < n; ++i)
            for (const auto& [r, d] : candidates[i])
                if (d <= L) adj[i].push_back(r);
        Matcher matcher(n, n, adj);
        int matched = matcher.solve();
        res.escalation.push_back({L, matched, n - matched});
        if (matched == n) {
            res.success = true;
            res.L = L;
            for (int i = 0; i < n; ++i)
                res.bijection.emplace_back(left[i], right[matcher.match_l[i]]);
            return res;
        }
        if (L == L_max) {
            for (int i : matcher.hall_witness())
                res.hall_witness.push_back(dom.id(left[i]));
            res.witness_on_domain_side = true;
        }
    }
    return res;
}

std::string realization_to_json(const QIMap& f, const RealizationResult& r) {
    nlohmann::json j;
    j["L"] = r.success ? nlohmann::json(r.L) : nlohmann::json(nullptr);
    auto bij = nlohmann::json::array();
    for (const auto& [x, y] : r.bijection)
        bij.push_back({f.domain->id(x), f.codomain->id(y)});
    j["bijection"] = bij;
    auto esc = nlohmann::json::array();
    for (const auto& step : r.escalation)
        esc.push_back({{"L", step.L},
                       {"matched", step.matched},
                       {"deficiency", step.deficiency}});
    j["escalation"] = esc;
    j["hall_witness"] = r.hall_witness.empty()
                            ? nlohmann::json(nullptr)
                            : nlohmann::json(r.hall_witness);
    j["trimmed"] = {{"domain", r.trimmed_domain}, {"codomain", r.trimmed_codomain}};
    return j.dump(2);
}

LiftResult lift_to_products(const QIMap& f, long long m, long long n) {
    auto dp = product_with_cyclic(f.domain, n);
    auto cp = product_with_cyclic(f.codomain, m);
    double C = f.C;
    int K = static_cast<int>(std::ceil(f.C * (n / 2) + f.K + m / 2));
    QIMap lift = make_map(
        dp.product, cp.product,
        [&](const std::string& id) {
            auto at = id.rfind('@');
            auto base = id.substr(0, at);
            return f.codomain->id(f.table[f.domain->index_of(base)]) + "@0";
        },
        C, K);
    return LiftResult{std::move(lift), dp.product, cp.product};
}

MnRealization realize_mn(const QIMap& f, int m, int n, int L_max,
                         std::uint64_t seed) {
    MnRealization res;
    res.partition_domain = partition_window(f.domain, m, seed);
    res.partition_codomain = partition_window(f.codomain, n, seed + 1);
    const auto& PX = res.partition_domain;
    const auto& PY = res.partition_codomain;

    auto piece_of = [](const WindowPtr& win, const Partition& p) {
        std::vector<int> owner(win->size(), -1);
        for (std::size_t i = 0; i < p.pieces.size(); ++i)
            for (auto v : p.pieces[i].indices())
                owner[v] = static_cast<int>(i);
        return owner;
    };
    auto owner_x = piece_of(f.domain, PX);
    auto owner_y = piece_of(f.codomain, PY);

    auto basepoint = [](const WindowPtr& win, const VertexSet& piece) {
        auto best = piece.indices().front();
        for (auto v : piece.indices())
            if (win->id(v) < win->id(best)) best = v;
        return best;
    };
    std::vector<std::int32_t> base_x, base_y;
    for (const auto& p : PX.pieces) base_x.push_back(basepoint(f.domain, p));
    for (const auto& p : PY.pieces) base_y.push_back(basepoint(f.codomain, p));

    // Codomain piece graph (all pieces; remainders carry distance but are
    // not matchable).
    const int npy = static_cast<int>(PY.pieces.size());
    std::vector<std::vector<int>> piece_adj(npy);
    {
        for (std::size_t e = 0; e < f.codomain->size(); ++e) {
            for (auto w : f.codomain->neighbors(static_cast<std::int32_t>(e))) {
                int a = owner_y[e], b = owner_y[w];
                if (a != b) piece_adj[a].push_back(b);
            }
        }
        for (auto& nb : piece_adj) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
    }
    auto piece_dist_from = [&](int source, int cap) {
        std::vector<int> dist(npy, -1);
        std::deque<int> queue{source};
        dist[source] = 0;
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            if (dist[v] >= cap) continue;
            for (auto w : piece_adj[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    };

    // Matchable pieces: exact pieces; domain pieces must map into an exact
    // codomain piece.
    std::vector<int> left, right;
    for (std::size_t i = 0; i < PX.pieces.size(); ++i) {
        if (PX.remainder_index && *PX.remainder_index == i) continue;
        int q = owner_y[f.table[base_x[i]]];
        if (PY.remainder_index && static_cast<std::size_t>(q) == *PY.remainder_index) {
            ++res.trimmed_pieces_domain;
            continue;
        }
        left.push_back(static_cast<int>(i));
    }
    for (std::size_t j = 0; j < PY.pieces.size(); ++j) {
        if (PY.remainder_index && *PY.remainder_index == j) continue;
        right.push_back(static_cast<int>(j));
    }
    auto target = std::min(left.size(), right.size());
    res.trimmed_pieces_domain += equalize(left, target, [&](int i) {
        auto b = f.table[base_x[i]];
        return std::make_pair(f.codomain->dist_center(b), f.codomain->id(b));
    });
    res.trimmed_pieces_codomain = equalize(right, target, [&](int j) {
        return std::make_pair(f.codomain->dist_center(base_y[j]),
                              f.codomain->id(base_y[j]));
    });
    if (left.empty()) throw EmptySet("realize_mn: no matchable pieces");

    std::vector<int> right_pos(npy, -1);
    for (std::size_t j = 0; j < right.size(); ++j) right_pos[right[j]] = static_cast<int>(j);

    std::vector<std::vector<std::pair<int, int>>> candidates(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        int q = owner_y[f.table[base_x[left[i]]]];
        auto dist = piece_dist_from(q, L_max);
        for (int j = 0; j < npy; ++j)
            if (dist[j] >= 0 && right_pos[j] >= 0)
                candidates[i].emplace_back(right_pos[j], dist[j]);
    }

    const int nl = static_cast<int>(left.size());
    std::vector<int> match;
    for (int L = 0; L <= L_max; ++L) {
        std::vector<std::vector<int>> adj(nl);
        for (int i = 0; i < nl; ++i)
            for (const auto& [r, d] : candidates[i])
                if (d <= L) adj[i].push_back(r);
        Matcher matcher(nl, nl, adj);
        int matched = matcher.solve();
        if (matched == nl) {
            res.L = L;
            match = matcher.match_l;
            break;
        }
        if (L == L_max) {
            std::vector<std::string> witness;
            for (int i : matcher.hall_witness())
                witness.push_back(f.domain->id(base_x[left[i]]));
            throw NoBijectionWithinL("realize_mn: piece matching failed", L_max,
                                     std::move(witness), true);
        }
    }

    for (int i = 0; i < nl; ++i)
        res.psi.emplace_back(static_cast<std::size_t>(left[i]),
                             static_cast<std::size_t>(right[match[i]]));

    // D over exact pieces of both partitions.
    int D = 0;
    for (std::size_t i = 0; i < PX.pieces.size(); ++i)
        if (!(PX.remainder_index && *PX.remainder_index == i))
            D = std::max(D, PX.diameters[i]);
    for (std::size_t j = 0; j < PY.pieces.size(); ++j)
        if (!(PY.remainder_index && *PY.remainder_index == j))
            D = std::max(D, PY.diameters[j]);
    res.piece_diameter = D;
    res.displacement_bound =
        static_cast<int>(std::ceil(f.C * D)) + f.K + (res.L + 1) * D;

    // g: basepoint of the matched piece; unmatched vertices fall back to f.
    std::vector<int> psi_of(PX.pieces.size(), -1);
    for (const auto& [p, q] : res.psi) psi_of[p] = static_cast<int>(q);
    res.g.domain = f.domain;
    res.g.codomain = f.codomain;
    res.g.C = f.C;
    res.g.K = f.K + res.displacement_bound;
    res.g.table.resize(f.domain->size());
    for (std::size_t x = 0; x < f.domain->size(); ++x) {
        int p = owner_x[x];
        res.g.table[x] =
            psi_of[p] >= 0 ? base_y[psi_of[p]] : f.table[x];
    }

    // Observed displacement on certified vertices of matched pieces.
    for (std::size_t x = 0; x < f.domain->size(); ++x) {
        if (psi_of[owner_x[x]] < 0) continue;
        auto fx = f.table[x];
        int cap = f.codomain->certified_radius(fx);
        if (cap < 0) continue;
        std::int32_t src[1] = {fx};
        auto dist = f.codomain->bfs(src, cap);
        int d = dist[res.g.table[x]];
        if (d >= 0) res.max_displacement = std::max(res.max_displacement, d);
    }
    return res;
}

}  // namespace qiscale
