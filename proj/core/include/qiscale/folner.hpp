#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qiscale/cayley.hpp"
#include "qiscale/graph_window.hpp"
#include "qiscale/qi_map.hpp"
#include "qiscale/rational.hpp"

namespace qiscale {

struct FolnerStats {
    std::int64_t size = 0;
    std::int64_t boundary1 = 0;
    std::int64_t boundary2 = 0;
    Rat ratio1{0};
    Rat ratio2{0};
};

// Nested finite vertex sets with isoperimetric statistics. Sets keep an
// interior margin of 2 so that both boundary radii are certified.
class FolnerFamily {
public:
    static FolnerFamily from_sets(std::string desc, std::vector<VertexSet> sets);

    const WindowPtr& window() const { return win_; }
    const std::vector<VertexSet>& sets() const { return sets_; }
    const std::vector<FolnerStats>& stats() const { return stats_; }
    const std::string& description() const { return desc_; }
    std::size_t size() const { return sets_.size(); }

    // CSV columns: n, |A_n|, |d1 A_n|, |d2 A_n|, ratio1, ratio2.
    void write_csv(std::ostream& os) const;

private:
    FolnerFamily() = default;
    WindowPtr win_;
    std::vector<VertexSet> sets_;
    std::vector<FolnerStats> stats_;
    std::string desc_;
};

// Standard Folner sets of the given group: boxes [-n,n]^d for lattices,
// normal-form boxes [-n,n]x[-n,n]x[-n^2,n^2] for Heisenberg, bounded-support
// configurations for lamplighters. Levels are stride, 2*stride, ...,
// count*stride. Throws WindowTooSmall if the margin-2 check fails.
FolnerFamily standard_folner(const GroupSpec& spec, const WindowPtr& window,
                             int count, int stride = 1);

// |d_R A| / |A| as an exact rational.
Rat isoperimetric_ratio(const VertexSet& A, int R);

// A_n := f^{-1}(G_n^{+K})^{+1} on the domain of f.
FolnerFamily pullback_folner(const QIMap& f, const FolnerFamily& G, int K);

}  // namespace qiscale
