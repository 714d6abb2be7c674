#include "qiscale/graph_window.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace qiscale {

GraphWindow::GraphWindow(std::vector<std::string> ids,
                         std::vector<std::vector<std::int32_t>> adjacency,
                         std::int32_t center, int interior_radius,
                         int degree_bound, std::string host_name)
    : ids_(std::move(ids)), adjacency_(std::move(adjacency)), center_(center),
      interior_radius_(interior_radius), degree_bound_(degree_bound),
      host_name_(std::move(host_name)) {
    const auto n = ids_.size();
    if (adjacency_.size() != n) throw Error("adjacency size mismatch");
    if (center_ < 0 || static_cast<std::size_t>(center_) >= n)
        throw Error("center out of range");
    if (interior_radius_ < 0) throw Error("negative interior radius");
    if (degree_bound_ <= 0) throw Error("nonpositive degree bound");

    lookup_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!lookup_.emplace(ids_[i], static_cast<std::int32_t>(i)).second)
            throw Error("duplicate vertex id: " + ids_[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& nb = adjacency_[i];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw Error("duplicate edge at vertex " + ids_[i]);
        if (static_cast<int>(nb.size()) > degree_bound_)
            throw Error("degree bound violated at vertex " + ids_[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (auto v : adjacency_[i]) {
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw Error("neighbor index out of range");
            if (v == static_cast<std::int32_t>(i))
                throw Error("self-loop at vertex " + ids_[i]);
            const auto& back = adjacency_[v];
            if (!std::binary_search(back.begin(), back.end(),
                                    static_cast<std::int32_t>(i)))
                throw Error("asymmetric adjacency at vertex " + ids_[i]);
        }
    }

    std::int32_t src[1] = {center_};
    dist_center_ = bfs(src, -1);
    for (std::size_t i = 0; i < n; ++i)
        if (dist_center_[i] < 0) throw Error("window is not connected");
}

std::int32_t GraphWindow::index_of(const std::string& id) const {
    auto it = lookup_.find(id);
    if (it == lookup_.end()) throw Error("unknown vertex id: " + id);
    return it->second;
}

std::vector<std::int32_t> GraphWindow::bfs(std::span<const std::int32_t> sources,
                                           int max_depth) const {
    std::vector<std::int32_t> dist(ids_.size(), -1);
    std::deque<std::int32_t> queue;
    for (auto s : sources) {
        if (dist[s] == 0) continue;
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        if (max_depth >= 0 && dist[v] >= max_depth) continue;
        for (auto w : adjacency_[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

void GraphWindow::save(std::ostream& os) const {
    os << "window " << host_name_ << ' ' << ids_.size() << ' '
       << interior_radius_ << ' ' << degree_bound_ << ' ' << ids_[center_]
       << '\n';
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        os << ids_[i] << ':';
        for (auto v : adjacency_[i]) os << ' ' << ids_[v];
        os << '\n';
    }
}

WindowPtr GraphWindow::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty window file");
    std::istringstream hs(header);
    std::string tag, host, center_id;
    std::size_t n = 0;
    int radius = 0, degree = 0;
    hs >> tag >> host >> n >> radius >> degree >> center_id;
    if (tag != "window" || hs.fail()) throw ParseError("bad window header");

    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> neighbor_ids;
    ids.reserve(n);
    std::string line;
    while (ids.size() < n && std::getline(is, line)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("bad vertex line: " + line);
        ids.push_back(line.substr(0, colon));
        std::istringstream ls(line.substr(colon + 1));
        std::vector<std::string> nbs;
        std::string nb;
        while (ls >> nb) nbs.push_back(nb);
        neighbor_ids.push_back(std::move(nbs));
    }
    if (ids.size() != n) throw ParseError("truncated window file");

    std::unordered_map<std::string, std::int32_t> lookup;
    for (std::size_t i = 0; i < n; ++i)
        lookup.emplace(ids[i], static_cast<std::int32_t>(i));
    std::vector<std::vector<std::int32_t>> adjacency(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& nb : neighbor_ids[i]) {
            auto it = lookup.find(nb);
            if (it == lookup.end()) throw ParseError("unknown neighbor id: " + nb);
            adjacency[i].push_back(it->second);
        }
    }
    auto cit = lookup.find(center_id);
    if (cit == lookup.end()) throw ParseError("unknown center id: " + center_id);
    return std::make_shared<GraphWindow>(std::move(ids), std::move(adjacency),
                                         cit->second, radius, degree, host);
}

VertexSet::VertexSet(WindowPtr win, std::vector<std::int32_t> indices)
    : win_(std::move(win)), idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    if (!idx_.empty()) {
        if (idx_.front() < 0 ||
            static_cast<std::size_t>(idx_.back()) >= win_->size())
            throw Error("vertex index outside window");
    }
}

VertexSet VertexSet::from_ids(const WindowPtr& win,
                              const std::vector<std::string>& ids) {
    std::vector<std::int32_t> idx;
    idx.reserve(ids.size());
    for (const auto& id : ids) idx.push_back(win->index_of(id));
    return VertexSet(win, std::move(idx));
}

bool VertexSet::contains(std::int32_t v) const {
    return std::binary_search(idx_.begin(), idx_.end(), v);
}

std::vector<std::string> VertexSet::ids() const {
    std::vector<std::string> out;
    out.reserve(idx_.size());
    for (auto v : idx_) out.push_back(win_->id(v));
    return out;
}

namespace {

void require_margin(const VertexSet& A, int R, const char* op) {
    const auto& win = *A.window();
    for (auto v : A.indices()) {
        if (win.dist_center(v) + R > win.interior_radius())
            throw OutOfInterior(std::string(op) +
                                ": set exits the certified interior at vertex " +
                                win.id(v));
    }
}

}  // namespace

VertexSet ball(const WindowPtr& win, std::int32_t x, int r) {
    if (r < 0) throw Error("negative radius");
    if (win->dist_center(x) + r > win->interior_radius())
        throw OutOfInterior("ball: radius " + std::to_string(r) +
                            " around " + win->id(x) + " may touch the fringe");
    std::int32_t src[1] = {x};
    auto dist = win->bfs(src, r);
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] >= 0) out.push_back(static_cast<std::int32_t>(i));
    return VertexSet(win, std::move(out));
}

VertexSet neighborhood(const VertexSet& A, int R) {
    if (R < 0) throw Error("negative neighborhood radius");
    if (A.empty()) throw EmptySet("neighborhood of empty set");
    require_margin(A, R, "neighborhood");
    if (R == 0) return A;
    auto dist = A.window()->bfs(A.indices(), R);
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] >= 0) out.push_back(static_cast<std::int32_t>(i));
    return VertexSet(A.window(), std::move(out));
}

namespace {

std::vector<std::int32_t> complement_indices(const VertexSet& A) {
    std::vector<std::int32_t> out;
    const auto n = static_cast<std::int32_t>(A.window()->size());
    out.reserve(n - A.size());
    for (std::int32_t v = 0; v < n; ++v)
        if (!A.contains(v)) out.push_back(v);
    return out;
}

}  // namespace

VertexSet boundary(const VertexSet& A, int R) {
    if (R < 0) throw Error("negative boundary radius");
    if (A.empty()) throw EmptySet("boundary of empty set");
    require_margin(A, R, "boundary");
    const auto& win = A.window();
    auto comp = complement_indices(A);

    // (A^{+R} \ A) u (comp^{+R} \ comp)
    auto dist_a = win->bfs(A.indices(), R);
    auto dist_c = win->bfs(comp, R);
    std::vector<std::int32_t> out;
    const auto n = static_cast<std::int32_t>(win->size());
    for (std::int32_t v = 0; v < n; ++v) {
        bool in_a = A.contains(v);
        if (!in_a && dist_a[v] >= 0) out.push_back(v);
        if (in_a && dist_c[v] >= 0) out.push_back(v);
    }
    VertexSet result(win, std::move(out));
    assert(result == boundary_by_definition(A, R));
    return result;
}

VertexSet boundary_by_definition(const VertexSet& A, int R) {
    if (A.empty()) throw EmptySet("boundary of empty set");
    require_margin(A, R, "boundary");
    const auto& win = A.window();
    auto comp = complement_indices(A);
    auto dist_a = win->bfs(A.indices(), R);
    auto dist_c = win->bfs(comp, R);
    std::vector<std::int32_t> out;
    const auto n = static_cast<std::int32_t>(win->size());
    for (std::int32_t v = 0; v < n; ++v)
        if (dist_a[v] >= 0 && dist_c[v] >= 0) out.push_back(v);
    return VertexSet(win, std::move(out));
}

GeometryBounds verify_geometry(const WindowPtr& win, int r_max) {
    if (r_max > win->interior_radius() / 2)
        throw Error("verify_geometry: r_max exceeds interior_radius / 2");
    GeometryBounds gb;
    if (r_max <= 0) return gb;
    gb.bounds.assign(r_max, {std::numeric_limits<std::int64_t>::max(), 0});
    const auto n = static_cast<std::int32_t>(win->size());
    for (std::int32_t x = 0; x < n; ++x) {
        if (win->dist_center(x) + r_max > win->interior_radius()) continue;
        std::int32_t src[1] = {x};
        auto dist = win->bfs(src, r_max);
        std::vector<std::int64_t> count(r_max + 1, 0);
        for (auto d : dist)
            if (d >= 0) ++count[d];
        std::int64_t acc = count[0];
        for (int r = 1; r <= r_max; ++r) {
            acc += count[r];
            auto& [lo, hi] = gb.bounds[r - 1];
            lo = std::min(lo, acc);
            hi = std::max(hi, acc);
        }
    }
    return gb;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    std::vector<std::int32_t> out;
    std::set_union(a.indices().begin(), a.indices().end(), b.indices().begin(),
                   b.indices().end(), std::back_inserter(out));
    return VertexSet(a.window(), std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    std::vector<std::int32_t> out;
    std::set_difference(a.indices().begin(), a.indices().end(),
                        b.indices().begin(), b.indices().end(),
                        std::back_inserter(out));
    return VertexSet(a.window(), std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    std::vector<std::int32_t> out;
    std::set_intersection(a.indices().begin(), a.indices().end(),
                          b.indices().begin(), b.indices().end(),
                          std::back_inserter(out));
    return VertexSet(a.window(), std::move(out));
}

}  // namespace qiscale
