#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qiscale/graph_window.hpp"
#include "qiscale/rational.hpp"

namespace qiscale {

class FolnerFamily;

// Tabulated map between two windows with declared quasi-isometry params.
struct QIMap {
    WindowPtr domain;
    WindowPtr codomain;
    std::vector<std::int32_t> table;  // domain index -> codomain index
    double C = 1.0;
    int K = 0;

    std::int32_t operator()(std::int32_t x) const { return table[x]; }

    // TSV: header `map <domain_host> <codomain_host> <C> <K>`,
    // then `<x_id>\t<f(x)_id>` per domain vertex.
    void save(std::ostream& os) const;
    static QIMap load(std::istream& is, WindowPtr domain, WindowPtr codomain);
};

// Builds a table by applying an id-level function to every domain vertex.
// Throws WindowMismatch if an image id is not present in the codomain.
QIMap make_map(WindowPtr domain, WindowPtr codomain,
               const std::function<std::string(const std::string&)>& fn,
               double C, int K);

QIMap identity_map(const WindowPtr& win);

// Interior-restricted preimage f^{-1}(A); A must live on f.codomain.
VertexSet preimage_set(const QIMap& f, const VertexSet& A);

// True if some vertex at the domain's interior rim (or beyond) maps into
// A^{+1}; the preimage count is then suspect of window truncation.
bool preimage_truncated(const QIMap& f, const VertexSet& A);

struct QIVerifyReport {
    bool metric_ok = true;
    // Worst-slack pair for the metric inequalities (empty if none checked).
    std::string worst_x, worst_y;
    double worst_slack = -1.0e300;  // positive = violation margin
    // Smallest K' such that the image is K'-dense on the margin-shrunk
    // codomain interior; -1 when the shrunk interior is empty.
    int density_radius = -1;
    bool density_ok = false;  // density_radius <= declared K (or K==0, <=... exact)
    long checked_pairs = 0;
    bool ok() const { return metric_ok; }
};

QIVerifyReport verify_qi(const QIMap& f, int margin);

struct DefectRow {
    std::string set_name;
    std::int64_t size_a = 0;
    std::int64_t preimage = 0;
    std::int64_t boundary = 0;
    Rat defect{0};
    Rat ratio{0};
    bool skipped = false;
    std::string skip_reason;
};

struct DefectReport {
    Rat kappa{1};
    int R = 1;
    std::vector<DefectRow> rows;
    Rat sup_constant{0};
    std::string family_desc;
};

struct TestSet {
    std::string name;
    VertexSet set;
};

DefectReport defect(const QIMap& f, const Rat& kappa,
                    const std::vector<TestSet>& family, int R);

struct EstimateTrace {
    std::vector<Rat> ratios;
    double max_oscillation = 0.0;  // over the last half of the sequence
    bool stable(double tol) const { return max_oscillation <= tol; }
    Rat final_ratio() const { return ratios.empty() ? Rat(0) : ratios.back(); }
};

EstimateTrace scaling_estimate(const QIMap& f, const FolnerFamily& family);

QIMap compose(const QIMap& f, const QIMap& g);

struct QuasiInverseResult {
    QIMap inverse;
    int max_image_distance = 0;   // max over y of d(f(fbar(y)), y)
    int composite_bound = 0;      // computed bound for d(fbar(f(x)), x)
    bool composites_ok = false;
};

QuasiInverseResult quasi_inverse(const QIMap& f, int search_radius);

// Default defect test family: codomain Folner-style boxes when available,
// seeded BFS-grown connected sets, and all balls of radius <= 3 at sampled
// centers.
std::vector<TestSet> default_test_family(const WindowPtr& codomain,
                                         std::uint64_t seed, int margin,
                                         int count);

}  // namespace qiscale
