#include "qiscale/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qiscale {

namespace {

std::vector<long long> parse_int_list(const std::string& s, char sep = ',') {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoll(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::string format_int_list(const std::vector<long long>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

struct LampElement {
    long long cursor = 0;
    std::map<long long, long long> lamps;  // position -> value in Z/n, nonzero

    static LampElement parse(const std::string& id) {
        LampElement e;
        auto bar = id.find('|');
        if (bar == std::string::npos) throw ParseError("bad lamplighter id: " + id);
        e.cursor = std::stoll(id.substr(0, bar));
        auto rest = id.substr(bar + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            auto entry = rest.substr(pos, comma - pos);
            auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw ParseError("bad lamp entry: " + entry);
            e.lamps[std::stoll(entry.substr(0, colon))] =
                std::stoll(entry.substr(colon + 1));
            pos = comma + 1;
        }
        return e;
    }

    std::string to_string() const {
        std::string out = std::to_string(cursor) + "|";
        bool first = true;
        for (const auto& [p, v] : lamps) {
            if (!first) out += ',';
            out += std::to_string(p) + ":" + std::to_string(v);
            first = false;
        }
        return out;
    }
};

// Splits "<base>@k" at the last '@'.
std::pair<std::string, long long> split_layer(const std::string& id) {
    auto at = id.rfind('@');
    if (at == std::string::npos) throw ParseError("bad product id: " + id);
    return {id.substr(0, at), std::stoll(id.substr(at + 1))};
}

}  // namespace

GroupSpec GroupSpec::free_abelian(int d) {
    if (d < 1) throw ParseError("FreeAbelian rank must be >= 1");
    GroupSpec s;
    s.kind = Kind::FreeAbelian;
    s.d = d;
    return s;
}

GroupSpec GroupSpec::heisenberg() {
    GroupSpec s;
    s.kind = Kind::Heisenberg3;
    return s;
}

GroupSpec GroupSpec::lamplighter(long long n) {
    if (n < 2) throw BadModulus("lamplighter modulus must be >= 2");
    GroupSpec s;
    s.kind = Kind::Lamplighter;
    s.n = n;
    return s;
}

GroupSpec GroupSpec::cyclic_product(GroupSpec base, long long n) {
    if (n < 1) throw ParseError("cyclic factor must be >= 1");
    GroupSpec s;
    s.kind = Kind::CyclicProduct;
    s.n = n;
    s.base = std::make_shared<GroupSpec>(std::move(base));
    return s;
}

GroupSpec GroupSpec::sublattice(int d, std::vector<std::vector<long long>> m) {
    if (static_cast<int>(m.size()) != d) throw ParseError("sublattice matrix shape");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != d)
            throw ParseError("sublattice matrix shape");
    if (integer_determinant(m) == 0)
        throw ParseError("sublattice matrix is singular");
    GroupSpec s;
    s.kind = Kind::Sublattice;
    s.d = d;
    s.matrix = std::move(m);
    return s;
}

GroupSpec GroupSpec::parse(const std::string& s) {
    if (s == "heis") return heisenberg();
    if (s.rfind("zd:", 0) == 0) return free_abelian(std::stoi(s.substr(3)));
    if (s.rfind("lamp:", 0) == 0) return lamplighter(std::stoll(s.substr(5)));
    if (s.rfind("prod:", 0) == 0) {
        auto rest = s.substr(5);
        auto colon = rest.rfind(':');
        if (colon == std::string::npos) throw ParseError("bad prod spec: " + s);
        return cyclic_product(parse(rest.substr(0, colon)),
                              std::stoll(rest.substr(colon + 1)));
    }
    if (s.rfind("sublattice:", 0) == 0) {
        auto rest = s.substr(11);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw ParseError("bad sublattice spec: " + s);
        int d = std::stoi(rest.substr(0, colon));
        auto mat_str = rest.substr(colon + 1);
        // [[a,b],[c,d]]
        std::vector<std::vector<long long>> m;
        std::vector<long long> row;
        std::string num;
        for (char c : mat_str) {
            if (c == '-' || (c >= '0' && c <= '9')) {
                num += c;
            } else {
                if (!num.empty()) {
                    row.push_back(std::stoll(num));
                    num.clear();
                }
                if (c == ']' && !row.empty()) {
                    m.push_back(row);
                    row.clear();
                }
            }
        }
        return sublattice(d, std::move(m));
    }
    throw ParseError("unknown group spec: " + s);
}

std::string GroupSpec::to_string() const {
    switch (kind) {
        case Kind::FreeAbelian:
            return "zd:" + std::to_string(d);
        case Kind::Heisenberg3:
            return "heis";
        case Kind::Lamplighter:
            return "lamp:" + std::to_string(n);
        case Kind::CyclicProduct:
            return "prod:" + base->to_string() + ":" + std::to_string(n);
        case Kind::Sublattice: {
            std::string m = "[";
            for (std::size_t i = 0; i < matrix.size(); ++i) {
                if (i) m += ',';
                m += "[" + format_int_list(matrix[i]) + "]";
            }
            m += "]";
            return "sublattice:" + std::to_string(d) + ":" + m;
        }
    }
    return "?";
}

int GroupSpec::generator_degree() const {
    switch (kind) {
        case Kind::FreeAbelian:
        case Kind::Sublattice:
            return 2 * d;
        case Kind::Heisenberg3:
            return 4;
        case Kind::Lamplighter:
            return n == 2 ? 3 : 4;
        case Kind::CyclicProduct:
            return base->generator_degree() + (n >= 3 ? 2 : (n == 2 ? 1 : 0));
    }
    return 0;
}

std::string GroupSpec::identity_id() const {
    switch (kind) {
        case Kind::FreeAbelian:
        case Kind::Sublattice:
            return format_int_list(std::vector<long long>(d, 0));
        case Kind::Heisenberg3:
            return "0,0,0";
        case Kind::Lamplighter:
            return "0|";
        case Kind::CyclicProduct:
            return base->identity_id() + "@0";
    }
    return "";
}

std::vector<std::string> GroupSpec::neighbor_ids(const std::string& id) const {
    std::vector<std::string> out;
    switch (kind) {
        case Kind::FreeAbelian:
        case Kind::Sublattice: {
            auto v = parse_int_list(id);
            for (int i = 0; i < d; ++i) {
                for (int sgn : {+1, -1}) {
                    auto w = v;
                    w[i] += sgn;
                    out.push_back(format_int_list(w));
                }
            }
            break;
        }
        case Kind::Heisenberg3: {
            // (a,b,c) <-> upper-triangular [[1,a,c],[0,1,b],[0,0,1]];
            // right multiplication by x^{+-1} and y^{+-1}.
            auto v = parse_int_list(id);
            long long a = v[0], b = v[1], c = v[2];
            out.push_back(format_int_list({a + 1, b, c}));
            out.push_back(format_int_list({a - 1, b, c}));
            out.push_back(format_int_list({a, b + 1, c + a}));
            out.push_back(format_int_list({a, b - 1, c - a}));
            break;
        }
        case Kind::Lamplighter: {
            auto e = LampElement::parse(id);
            auto walk = e;
            walk.cursor = e.cursor + 1;
            out.push_back(walk.to_string());
            walk.cursor = e.cursor - 1;
            out.push_back(walk.to_string());
            auto press = [&](long long delta) {
                auto f = e;
                long long val = ((f.lamps.count(f.cursor) ? f.lamps[f.cursor] : 0) +
                                 delta % n + n) % n;
                if (val == 0)
                    f.lamps.erase(f.cursor);
                else
                    f.lamps[f.cursor] = val;
                return f.to_string();
            };
            out.push_back(press(+1));
            if (n > 2) out.push_back(press(-1));
            break;
        }
        case Kind::CyclicProduct: {
            auto [bid, k] = split_layer(id);
            for (const auto& nb : base->neighbor_ids(bid))
                out.push_back(nb + "@" + std::to_string(k));
            if (n >= 3) {
                out.push_back(bid + "@" + std::to_string((k + 1) % n));
                out.push_back(bid + "@" + std::to_string((k - 1 + n) % n));
            } else if (n == 2) {
                out.push_back(bid + "@" + std::to_string(1 - k));
            }
            break;
        }
    }
    return out;
}

bool GroupSpec::in_folner_level(const std::string& id, long long level) const {
    switch (kind) {
        case Kind::FreeAbelian:
        case Kind::Sublattice: {
            auto v = parse_int_list(id);
            for (auto x : v)
                if (std::llabs(x) > level) return false;
            return true;
        }
        case Kind::Heisenberg3: {
            auto v = parse_int_list(id);
            return std::llabs(v[0]) <= level && std::llabs(v[1]) <= level &&
                   std::llabs(v[2]) <= level * level;
        }
        case Kind::Lamplighter: {
            auto e = LampElement::parse(id);
            if (e.cursor < 0 || e.cursor > level) return false;
            for (const auto& [p, v] : e.lamps)
                if (p < 0 || p > level) return false;
            return true;
        }
        case Kind::CyclicProduct: {
            auto [bid, k] = split_layer(id);
            (void)k;
            return base->in_folner_level(bid, level);
        }
    }
    return false;
}

WindowPtr enumerate_window(const GroupSpec& spec, int radius,
                           std::size_t budget_bytes) {
    if (radius < 1) throw Error("enumerate_window: radius must be >= 1");
    if (budget_bytes == 0) {
        if (const char* env = std::getenv("QISCALE_BUDGET_MB"))
            budget_bytes = static_cast<std::size_t>(std::stoull(env)) << 20;
        else
            budget_bytes = std::size_t{512} << 20;
    }
    const std::size_t max_vertices = budget_bytes / 96;

    std::vector<std::string> ids;
    std::unordered_map<std::string, std::int32_t> lookup;
    std::vector<int> depth;
    std::deque<std::int32_t> queue;

    auto intern = [&](const std::string& id, int dep) {
        auto it = lookup.find(id);
        if (it != lookup.end()) return it->second;
        if (ids.size() >= max_vertices)
            throw BudgetExceeded("enumerate_window: memory budget exceeded at " +
                                     std::to_string(ids.size()) + " vertices",
                                 ids.size());
        auto idx = static_cast<std::int32_t>(ids.size());
        ids.push_back(id);
        depth.push_back(dep);
        lookup.emplace(id, idx);
        queue.push_back(idx);
        return idx;
    };

    // Enumerate one layer beyond the declared interior so that every vertex
    // within `radius` of the identity has a complete neighbor list.
    const int enum_depth = radius + 1;
    intern(spec.identity_id(), 0);
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        if (depth[v] < enum_depth)
            for (const auto& nb : spec.neighbor_ids(ids[v])) intern(nb, depth[v] + 1);
    }

    std::vector<std::vector<std::int32_t>> adjacency(ids.size());
    for (std::size_t v = 0; v < ids.size(); ++v) {
        for (const auto& nb : spec.neighbor_ids(ids[v])) {
            auto it = lookup.find(nb);
            if (it != lookup.end()) adjacency[v].push_back(it->second);
        }
        std::sort(adjacency[v].begin(), adjacency[v].end());
        adjacency[v].erase(std::unique(adjacency[v].begin(), adjacency[v].end()),
                           adjacency[v].end());
    }
    return std::make_shared<GraphWindow>(std::move(ids), std::move(adjacency), 0,
                                         radius, spec.generator_degree(),
                                         spec.to_string());
}

long long integer_determinant(const std::vector<std::vector<long long>>& M) {
    const int d = static_cast<int>(M.size());
    if (d == 0) return 1;
    if (d == 1) return M[0][0];
    long long det = 0;
    for (int j = 0; j < d; ++j) {
        std::vector<std::vector<long long>> minor;
        for (int i = 1; i < d; ++i) {
            std::vector<long long> row;
            for (int l = 0; l < d; ++l)
                if (l != j) row.push_back(M[i][l]);
            minor.push_back(std::move(row));
        }
        long long cof = M[0][j] * integer_determinant(minor);
        det += (j % 2 == 0) ? cof : -cof;
    }
    return det;
}

namespace {

std::vector<std::vector<long long>> adjugate(
    const std::vector<std::vector<long long>>& M) {
    const int d = static_cast<int>(M.size());
    std::vector<std::vector<long long>> adj(d, std::vector<long long>(d, 0));
    if (d == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::vector<std::vector<long long>> minor;
            for (int r = 0; r < d; ++r) {
                if (r == i) continue;
                std::vector<long long> row;
                for (int c = 0; c < d; ++c)
                    if (c != j) row.push_back(M[r][c]);
                minor.push_back(std::move(row));
            }
            long long cof = integer_determinant(minor);
            adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;  // transpose of cofactors
        }
    }
    return adj;
}

long long max_column_l1(const std::vector<std::vector<long long>>& M) {
    const int d = static_cast<int>(M.size());
    long long best = 0;
    for (int j = 0; j < d; ++j) {
        long long s = 0;
        for (int i = 0; i < d; ++i) s += std::llabs(M[i][j]);
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

SublatticeInclusion sublattice_inclusion(
    const std::vector<std::vector<long long>>& M, int sub_radius,
    int base_radius, std::size_t budget_bytes) {
    const int d = static_cast<int>(M.size());
    long long det = integer_determinant(M);
    if (det == 0) throw Error("sublattice_inclusion: singular matrix");

    auto sub_spec = GroupSpec::sublattice(d, M);
    auto base_spec = GroupSpec::free_abelian(d);
    auto sub_win = enumerate_window(sub_spec, sub_radius, budget_bytes);
    auto base_win = enumerate_window(base_spec, base_radius, budget_bytes);

    // C from the two stretch factors of v <-> Mv in the l1 word metrics.
    long long stretch_up = max_column_l1(M);
    long long adj_norm = max_column_l1(adjugate(M));
    long long det_abs = std::llabs(det);
    long long stretch_down = (adj_norm + det_abs - 1) / det_abs;  // ceil
    double C = static_cast<double>(std::max({stretch_up, stretch_down, 1LL}));

    auto fn = [&](const std::string& id) {
        auto v = parse_int_list(id);
        std::vector<long long> image(d, 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) image[i] += M[i][j] * v[j];
        return format_int_list(image);
    };
    QIMap map = make_map(std::move(sub_win), std::move(base_win), fn, C, 0);
    return SublatticeInclusion{std::move(map), det_abs};
}

CyclicProductResult product_with_cyclic(const WindowPtr& base, long long n) {
    if (n < 1) throw Error("product_with_cyclic: n must be >= 1");
    const auto nb = static_cast<std::int32_t>(base->size());
    std::vector<std::string> ids;
    std::vector<std::vector<std::int32_t>> adjacency;
    ids.reserve(nb * n);
    adjacency.reserve(nb * n);
    auto index = [&](std::int32_t v, long long k) {
        return static_cast<std::int32_t>(v * n + k);
    };
    for (std::int32_t v = 0; v < nb; ++v) {
        for (long long k = 0; k < n; ++k) {
            ids.push_back(base->id(v) + "@" + std::to_string(k));
            std::vector<std::int32_t> nbs;
            for (auto w : base->neighbors(v)) nbs.push_back(index(w, k));
            if (n >= 3) {
                nbs.push_back(index(v, (k + 1) % n));
                nbs.push_back(index(v, (k - 1 + n) % n));
            } else if (n == 2) {
                nbs.push_back(index(v, 1 - k));
            }
            adjacency.push_back(std::move(nbs));
        }
    }
    int extra_degree = n >= 3 ? 2 : (n == 2 ? 1 : 0);
    auto product = std::make_shared<GraphWindow>(
        std::move(ids), std::move(adjacency), index(base->center(), 0),
        base->interior_radius(), base->degree_bound() + extra_degree,
        "prod:" + base->host_name() + ":" + std::to_string(n));

    int half = static_cast<int>(n / 2);
    QIMap embed = make_map(
        base, product, [](const std::string& id) { return id + "@0"; }, 1.0,
        half);
    QIMap project = make_map(
        product, base,
        [](const std::string& id) { return split_layer(id).first; }, 1.0, half);
    return CyclicProductResult{std::move(product), std::move(embed),
                               std::move(project)};
}

}  // namespace qiscale
