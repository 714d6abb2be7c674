#include "qiscale/folner.hpp"

#include <algorithm>
#include <ostream>

namespace qiscale {

FolnerFamily FolnerFamily::from_sets(std::string desc,
                                     std::vector<VertexSet> sets) {
    if (sets.empty()) throw EmptySet("Folner family with no sets");
    FolnerFamily fam;
    fam.desc_ = std::move(desc);
    fam.win_ = sets.front().window();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& A = sets[i];
        if (A.window() != fam.win_)
            throw WindowMismatch("Folner sets on different windows");
        if (A.empty()) throw EmptySet("empty Folner set");
        if (i > 0) {
            if (!std::includes(A.indices().begin(), A.indices().end(),
                               sets[i - 1].indices().begin(),
                               sets[i - 1].indices().end()))
                throw Error("Folner sets are not nested");
        }
        FolnerStats st;
        st.size = static_cast<std::int64_t>(A.size());
        try {
            st.boundary1 = static_cast<std::int64_t>(boundary(A, 1).size());
            st.boundary2 = static_cast<std::int64_t>(boundary(A, 2).size());
        } catch (const OutOfInterior&) {
            throw WindowTooSmall("Folner set exits the margin-2 interior");
        }
        st.ratio1 = Rat(st.boundary1, st.size);
        st.ratio2 = Rat(st.boundary2, st.size);
        fam.stats_.push_back(st);
        fam.sets_.push_back(A);
    }
    return fam;
}

void FolnerFamily::write_csv(std::ostream& os) const {
    os << "n,size,boundary1,boundary2,ratio1,ratio2\n";
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        const auto& st = stats_[i];
        os << (i + 1) << ',' << st.size << ',' << st.boundary1 << ','
           << st.boundary2 << ',' << format_rat(st.ratio1) << ','
           << format_rat(st.ratio2) << '\n';
    }
}

FolnerFamily standard_folner(const GroupSpec& spec, const WindowPtr& window,
                             int count, int stride) {
    if (count < 1 || stride < 1) throw Error("standard_folner: bad count/stride");
    if (window->host_name() != spec.to_string())
        throw WindowMismatch("standard_folner: window host " +
                             window->host_name() + " does not match spec " +
                             spec.to_string());
    std::vector<VertexSet> sets;
    const auto n = static_cast<std::int32_t>(window->size());
    for (int j = 1; j <= count; ++j) {
        long long level = static_cast<long long>(j) * stride;
        std::vector<std::int32_t> idx;
        for (std::int32_t v = 0; v < n; ++v)
            if (spec.in_folner_level(window->id(v), level)) idx.push_back(v);
        if (idx.empty()) throw WindowTooSmall("standard_folner: empty level set");
        sets.emplace_back(window, std::move(idx));
    }
    try {
        return FolnerFamily::from_sets(
            "standard:" + spec.to_string() + ":count=" + std::to_string(count) +
                ":stride=" + std::to_string(stride),
            std::move(sets));
    } catch (const OutOfInterior&) {
        throw WindowTooSmall("standard_folner: window too small for requested levels");
    }
}

Rat isoperimetric_ratio(const VertexSet& A, int R) {
    if (A.empty()) throw EmptySet("isoperimetric_ratio of empty set");
    auto bd = boundary(A, R);
    return Rat(static_cast<long long>(bd.size()),
               static_cast<long long>(A.size()));
}

FolnerFamily pullback_folner(const QIMap& f, const FolnerFamily& G, int K) {
    if (G.window() != f.codomain)
        throw WindowMismatch("pullback_folner: family lives on a different window");
    std::vector<VertexSet> sets;
    for (const auto& Gn : G.sets()) {
        auto thick = K > 0 ? neighborhood(Gn, K) : Gn;
        auto pre = preimage_set(f, thick);
        if (pre.empty())
            throw WindowMismatch("pullback_folner: empty preimage");
        sets.push_back(neighborhood(pre, 1));
    }
    return FolnerFamily::from_sets(
        "pullback(K=" + std::to_string(K) + "):" + G.description(),
        std::move(sets));
}

}  // namespace qiscale
