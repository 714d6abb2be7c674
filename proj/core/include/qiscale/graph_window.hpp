#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qiscale/errors.hpp"

namespace qiscale {

class GraphWindow;
using WindowPtr = std::shared_ptr<const GraphWindow>;

// Finite, explicitly enumerated window of a bounded-degree graph. Vertices
// within `interior_radius` of the center are guaranteed to carry complete
// neighbor lists; everything beyond is fringe and only usable as a BFS
// endpoint, never as a certified center.
class GraphWindow {
public:
    GraphWindow(std::vector<std::string> ids,
                std::vector<std::vector<std::int32_t>> adjacency,
                std::int32_t center, int interior_radius, int degree_bound,
                std::string host_name);

    std::size_t size() const { return ids_.size(); }
    const std::string& id(std::int32_t v) const { return ids_[v]; }
    std::int32_t index_of(const std::string& id) const;
    bool has_id(const std::string& id) const { return lookup_.count(id) != 0; }
    std::span<const std::int32_t> neighbors(std::int32_t v) const {
        return adjacency_[v];
    }
    std::int32_t center() const { return center_; }
    int interior_radius() const { return interior_radius_; }
    int degree_bound() const { return degree_bound_; }
    const std::string& host_name() const { return host_name_; }

    int dist_center(std::int32_t v) const { return dist_center_[v]; }
    // Largest r such that ball(v, r) is certified exact; negative on fringe.
    int certified_radius(std::int32_t v) const {
        return interior_radius_ - dist_center_[v];
    }
    bool is_interior(std::int32_t v) const {
        return dist_center_[v] <= interior_radius_;
    }

    // Multi-source BFS distances, truncated at max_depth (-1 for unreached).
    std::vector<std::int32_t> bfs(std::span<const std::int32_t> sources,
                                  int max_depth) const;

    // Text format: `window <host> <n> <interior_radius> <degree_bound> <center>`
    // followed by `<id>: <neighbor ids>` lines.
    void save(std::ostream& os) const;
    static WindowPtr load(std::istream& is);

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<std::int32_t>> adjacency_;
    std::unordered_map<std::string, std::int32_t> lookup_;
    std::vector<std::int32_t> dist_center_;
    std::int32_t center_;
    int interior_radius_;
    int degree_bound_;
    std::string host_name_;
};

// Sorted set of vertex indices of one window.
class VertexSet {
public:
    VertexSet(WindowPtr win, std::vector<std::int32_t> indices);

    static VertexSet from_ids(const WindowPtr& win,
                              const std::vector<std::string>& ids);

    const WindowPtr& window() const { return win_; }
    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    bool contains(std::int32_t v) const;
    const std::vector<std::int32_t>& indices() const { return idx_; }
    std::vector<std::string> ids() const;

    bool operator==(const VertexSet& o) const { return idx_ == o.idx_; }

private:
    WindowPtr win_;
    std::vector<std::int32_t> idx_;
};

// Two-sided ball-size bounds v_r <= |B(x,r)| <= V_r over interior centers.
struct GeometryBounds {
    // bounds[r-1] = {v_r, V_r} for r = 1..r_max.
    std::vector<std::pair<std::int64_t, std::int64_t>> bounds;
    int r_max() const { return static_cast<int>(bounds.size()); }
    std::int64_t v(int r) const { return bounds.at(r - 1).first; }
    std::int64_t V(int r) const { return bounds.at(r - 1).second; }
};

// Exact r-ball around x. Throws OutOfInterior unless r + d(center,x) fits
// inside the interior.
VertexSet ball(const WindowPtr& win, std::int32_t x, int r);

// {y : d(y, A) <= R}. Monotone in R and in A.
VertexSet neighborhood(const VertexSet& A, int R);

// R-boundary: computed as the decomposition (A^{+R}\A) u (comp^{+R}\comp);
// agrees with the intersection-of-neighborhoods definition (asserted in
// debug builds, and exposed for tests via boundary_by_definition).
VertexSet boundary(const VertexSet& A, int R);
VertexSet boundary_by_definition(const VertexSet& A, int R);

GeometryBounds verify_geometry(const WindowPtr& win, int r_max);

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

}  // namespace qiscale
