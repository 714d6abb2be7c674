#include "qiscale/qi_map.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "qiscale/folner.hpp"
#include "qiscale/rng.hpp"

namespace qiscale {

void QIMap::save(std::ostream& os) const {
    os << "map " << domain->host_name() << ' ' << codomain->host_name() << ' '
       << C << ' ' << K << '\n';
    for (std::size_t x = 0; x < table.size(); ++x)
        os << domain->id(static_cast<std::int32_t>(x)) << '\t'
           << codomain->id(table[x]) << '\n';
}

QIMap QIMap::load(std::istream& is, WindowPtr domain, WindowPtr codomain) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty map file");
    std::istringstream hs(header);
    std::string tag, dom_host, cod_host;
    double C = 1;
    int K = 0;
    hs >> tag >> dom_host >> cod_host >> C >> K;
    if (tag != "map" || hs.fail()) throw ParseError("bad map header");
    if (dom_host != domain->host_name() || cod_host != codomain->host_name())
        throw WindowMismatch("map hosts do not match the supplied windows");

    QIMap f;
    f.domain = std::move(domain);
    f.codomain = std::move(codomain);
    f.C = C;
    f.K = K;
    f.table.assign(f.domain->size(), -1);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("bad map line: " + line);
        auto x = f.domain->index_of(line.substr(0, tab));
        f.table[x] = f.codomain->index_of(line.substr(tab + 1));
    }
    for (auto v : f.table)
        if (v < 0) throw ParseError("map table not total on the domain");
    return f;
}

QIMap make_map(WindowPtr domain, WindowPtr codomain,
               const std::function<std::string(const std::string&)>& fn,
               double C, int K) {
    QIMap f;
    f.domain = std::move(domain);
    f.codomain = std::move(codomain);
    f.C = C;
    f.K = K;
    f.table.reserve(f.domain->size());
    for (std::size_t x = 0; x < f.domain->size(); ++x) {
        auto image = fn(f.domain->id(static_cast<std::int32_t>(x)));
        if (!f.codomain->has_id(image))
            throw WindowMismatch("image " + image + " of vertex " +
                                 f.domain->id(static_cast<std::int32_t>(x)) +
                                 " exits the codomain window");
        f.table.push_back(f.codomain->index_of(image));
    }
    return f;
}

QIMap identity_map(const WindowPtr& win) {
    QIMap f;
    f.domain = win;
    f.codomain = win;
    f.table.resize(win->size());
    std::iota(f.table.begin(), f.table.end(), 0);
    f.C = 1.0;
    f.K = 0;
    return f;
}

namespace {

std::vector<char> membership(const VertexSet& A) {
    std::vector<char> in(A.window()->size(), 0);
    for (auto v : A.indices()) in[v] = 1;
    return in;
}

}  // namespace

VertexSet preimage_set(const QIMap& f, const VertexSet& A) {
    if (A.window() != f.codomain)
        throw WindowMismatch("preimage_set: set lives on a different window");
    auto in = membership(A);
    std::vector<std::int32_t> out;
    const auto n = static_cast<std::int32_t>(f.domain->size());
    for (std::int32_t x = 0; x < n; ++x)
        if (f.domain->is_interior(x) && in[f.table[x]]) out.push_back(x);
    return VertexSet(f.domain, std::move(out));
}

bool preimage_truncated(const QIMap& f, const VertexSet& A) {
    auto in = membership(A);
    auto near_a = [&](std::int32_t y) {
        if (in[y]) return true;
        for (auto w : f.codomain->neighbors(y))
            if (in[w]) return true;
        return false;
    };
    const auto n = static_cast<std::int32_t>(f.domain->size());
    for (std::int32_t x = 0; x < n; ++x) {
        if (f.domain->dist_center(x) >= f.domain->interior_radius() &&
            near_a(f.table[x]))
            return true;
    }
    return false;
}

QIVerifyReport verify_qi(const QIMap& f, int margin) {
    QIVerifyReport rep;
    const auto& dom = *f.domain;
    const auto& cod = *f.codomain;
    const auto n = static_cast<std::int32_t>(dom.size());

    for (std::int32_t x = 0; x < n; ++x) {
        int cr = dom.certified_radius(x);
        if (cr < 1) continue;
        std::int32_t xs[1] = {x};
        auto dd = dom.bfs(xs, cr);
        int ccr = cod.certified_radius(f.table[x]);
        std::int32_t fs[1] = {f.table[x]};
        auto dc = ccr >= 0 ? cod.bfs(fs, ccr) : std::vector<std::int32_t>();

        for (std::int32_t y = x + 1; y < n; ++y) {
            if (dd[y] < 0) continue;
            double d = dd[y];
            double upper = f.C * d + f.K;
            double lower = d / f.C - f.K;
            int dfy = dc.empty() ? -1 : dc[f.table[y]];
            ++rep.checked_pairs;
            double slack;
            if (dfy >= 0) {
                slack = std::max(dfy - upper, lower - dfy);
            } else {
                // d(f(x),f(y)) exceeds the certified radius; only the upper
                // bound can be refuted.
                slack = (ccr + 1) - upper;
                if (slack <= 0) continue;
            }
            if (slack > rep.worst_slack) {
                rep.worst_slack = slack;
                rep.worst_x = dom.id(x);
                rep.worst_y = dom.id(y);
            }
            if (slack > 1e-9) rep.metric_ok = false;
        }
    }

    // K-density of the image on the codomain interior shrunk by margin.
    std::vector<std::int32_t> image;
    for (std::int32_t x = 0; x < n; ++x)
        if (dom.is_interior(x)) image.push_back(f.table[x]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (!image.empty()) {
        auto dist = cod.bfs(image, -1);
        int worst = -1;
        const auto m = static_cast<std::int32_t>(cod.size());
        for (std::int32_t y = 0; y < m; ++y) {
            if (cod.dist_center(y) + margin > cod.interior_radius()) continue;
            worst = std::max(worst, static_cast<int>(dist[y]));
        }
        rep.density_radius = worst;
        rep.density_ok = worst >= 0 && worst <= f.K;
    }
    return rep;
}

DefectReport defect(const QIMap& f, const Rat& kappa,
                    const std::vector<TestSet>& family, int R) {
    DefectReport rep;
    rep.kappa = kappa;
    rep.R = R;
    for (const auto& ts : family) {
        DefectRow row;
        row.set_name = ts.name;
        if (ts.set.window() != f.codomain) {
            row.skipped = true;
            row.skip_reason = "set on wrong window";
            rep.rows.push_back(std::move(row));
            continue;
        }
        try {
            auto bd = boundary(ts.set, R);
            if (preimage_truncated(f, ts.set)) {
                row.skipped = true;
                row.skip_reason = "preimage touches domain fringe";
                rep.rows.push_back(std::move(row));
                continue;
            }
            row.size_a = static_cast<std::int64_t>(ts.set.size());
            row.preimage =
                static_cast<std::int64_t>(preimage_set(f, ts.set).size());
            row.boundary = static_cast<std::int64_t>(bd.size());
            Rat scaled = kappa * Rat(row.size_a);
            Rat diff = scaled - Rat(row.preimage);
            row.defect = diff < Rat(0) ? -diff : diff;
            if (row.boundary > 0) {
                row.ratio = row.defect / Rat(row.boundary);
                rep.sup_constant = std::max(rep.sup_constant, row.ratio);
            }
        } catch (const OutOfInterior& e) {
            row.skipped = true;
            row.skip_reason = e.what();
        } catch (const EmptySet& e) {
            row.skipped = true;
            row.skip_reason = e.what();
        }
        rep.rows.push_back(std::move(row));
    }
    if (rep.rows.empty()) throw Error("defect: empty test family");
    return rep;
}

EstimateTrace scaling_estimate(const QIMap& f, const FolnerFamily& family) {
    if (family.window() != f.codomain)
        throw WindowMismatch("scaling_estimate: family lives on a different window");
    EstimateTrace trace;
    for (const auto& A : family.sets()) {
        if (preimage_truncated(f, A))
            throw OutOfInterior("scaling_estimate: preimage touches domain fringe");
        auto pre = preimage_set(f, A);
        trace.ratios.push_back(Rat(static_cast<long long>(pre.size()),
                                   static_cast<long long>(A.size())));
    }
    if (trace.ratios.size() >= 2) {
        std::size_t start = trace.ratios.size() / 2;
        double lo = to_double(trace.ratios[start]), hi = lo;
        for (std::size_t i = start; i < trace.ratios.size(); ++i) {
            double r = to_double(trace.ratios[i]);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        trace.max_oscillation = hi - lo;
    }
    return trace;
}

QIMap compose(const QIMap& f, const QIMap& g) {
    QIMap h;
    h.domain = f.domain;
    h.codomain = g.codomain;
    h.C = f.C * g.C;
    h.K = static_cast<int>(std::ceil(g.C * f.K + g.K));
    h.table.reserve(f.table.size());
    const bool same = f.codomain == g.domain;
    for (auto y : f.table) {
        std::int32_t gy;
        if (same) {
            gy = y;
        } else {
            if (f.codomain->host_name() != g.domain->host_name())
                throw WindowMismatch("compose: host mismatch between " +
                                     f.codomain->host_name() + " and " +
                                     g.domain->host_name());
            const auto& id = f.codomain->id(y);
            if (!g.domain->has_id(id))
                throw WindowMismatch("compose: image " + id +
                                     " not in the middle window");
            gy = g.domain->index_of(id);
        }
        if (!g.domain->is_interior(gy))
            throw WindowMismatch("compose: image exits the middle interior");
        h.table.push_back(g.table[gy]);
    }
    return h;
}

QuasiInverseResult quasi_inverse(const QIMap& f, int search_radius) {
    const auto& dom = *f.domain;
    const auto& cod = *f.codomain;
    const auto nd = static_cast<std::int32_t>(dom.size());
    const auto nc = static_cast<std::int32_t>(cod.size());

    // Deterministic preimage choice: lexicographically smallest domain id
    // among the nearest preimages.
    std::vector<std::int32_t> order(nd);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return dom.id(a) < dom.id(b);
    });
    std::vector<std::int32_t> rank(nd);
    for (std::int32_t i = 0; i < nd; ++i) rank[order[i]] = i;

    std::vector<int> dist(nc, -1);
    std::vector<std::int32_t> label(nc, -1);  // chosen domain vertex
    using Entry = std::tuple<int, std::int32_t, std::int32_t>;  // dist, rank, y
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    for (std::int32_t i = 0; i < nd; ++i) {
        auto x = order[i];
        auto y = f.table[x];
        if (label[y] < 0) {
            label[y] = x;
            dist[y] = 0;
            pq.emplace(0, rank[x], y);
        }
    }
    std::vector<char> settled(nc, 0);
    while (!pq.empty()) {
        auto [d, r, y] = pq.top();
        pq.pop();
        if (settled[y]) continue;
        settled[y] = 1;
        for (auto w : cod.neighbors(y)) {
            if (settled[w]) continue;
            if (dist[w] < 0 || d + 1 < dist[w] ||
                (d + 1 == dist[w] && r < rank[label[w]])) {
                dist[w] = d + 1;
                label[w] = label[y];
                pq.emplace(d + 1, r, w);
            }
        }
    }

    int worst = 0;
    for (std::int32_t y = 0; y < nc; ++y) {
        if (label[y] < 0)
            throw NoPreimageWithinRadius("quasi_inverse: unreachable codomain vertex " +
                                         cod.id(y));
        if (cod.is_interior(y)) {
            if (dist[y] > search_radius)
                throw NoPreimageWithinRadius(
                    "quasi_inverse: no preimage within radius " +
                    std::to_string(search_radius) + " of " + cod.id(y));
            worst = std::max(worst, dist[y]);
        }
    }

    QuasiInverseResult res;
    res.inverse.domain = f.codomain;
    res.inverse.codomain = f.domain;
    res.inverse.table.assign(label.begin(), label.end());
    res.inverse.C = f.C;
    res.max_image_distance = worst;
    res.composite_bound =
        static_cast<int>(std::ceil(f.C * (worst + f.K))) + f.K;
    res.inverse.K = res.composite_bound;

    // Verify fbar o f is within the computed bound on certified pairs.
    res.composites_ok = true;
    for (std::int32_t x = 0; x < nd; ++x) {
        if (!dom.is_interior(x)) continue;
        auto xb = res.inverse.table[f.table[x]];
        if (xb == x) continue;
        std::int32_t src[1] = {x};
        int cap = std::min(res.composite_bound, dom.certified_radius(x));
        if (cap < 0) continue;
        auto dd = dom.bfs(src, cap);
        if (dd[xb] < 0 && dom.certified_radius(x) >= res.composite_bound) {
            res.composites_ok = false;
            break;
        }
    }
    return res;
}

std::vector<TestSet> default_test_family(const WindowPtr& codomain,
                                         std::uint64_t seed, int margin,
                                         int count) {
    std::vector<TestSet> out;
    const auto n = static_cast<std::int32_t>(codomain->size());
    std::vector<std::int32_t> interior;
    for (std::int32_t v = 0; v < n; ++v)
        if (codomain->dist_center(v) + margin + 3 <= codomain->interior_radius())
            interior.push_back(v);
    if (interior.empty()) return out;

    // Balls of radius <= 3 at sampled centers.
    SplitRng ball_rng(seed, 1);
    for (int i = 0; i < std::min(count / 2, 8); ++i) {
        auto c = interior[ball_rng.below(interior.size())];
        for (int r = 1; r <= 3; ++r) {
            out.push_back({"ball(" + codomain->id(c) + "," + std::to_string(r) + ")",
                           ball(codomain, c, r)});
        }
    }

    // Seeded BFS-grown connected sets.
    for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
        SplitRng grow(seed, 100 + i);
        auto start = interior[grow.below(interior.size())];
        std::size_t target = 5 + grow.below(40);
        std::vector<std::int32_t> grown{start};
        std::vector<char> in(n, 0);
        in[start] = 1;
        std::vector<std::int32_t> frontier{start};
        while (grown.size() < target && !frontier.empty()) {
            auto pick = frontier[grow.below(frontier.size())];
            std::vector<std::int32_t> candidates;
            for (auto w : codomain->neighbors(pick))
                if (!in[w] &&
                    codomain->dist_center(w) + margin <= codomain->interior_radius())
                    candidates.push_back(w);
            if (candidates.empty()) {
                frontier.erase(std::find(frontier.begin(), frontier.end(), pick));
                continue;
            }
            auto w = candidates[grow.below(candidates.size())];
            in[w] = 1;
            grown.push_back(w);
            frontier.push_back(w);
        }
        out.push_back({"grown:" + std::to_string(i) + "@" + codomain->id(start),
                       VertexSet(codomain, std::move(grown))});
    }
    return out;
}

}  // namespace qiscale
