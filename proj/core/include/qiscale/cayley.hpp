#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qiscale/graph_window.hpp"
#include "qiscale/qi_map.hpp"

namespace qiscale {

// Concrete group presentations with canonical-form element encodings.
struct GroupSpec {
    enum class Kind {
        FreeAbelian,    // Z^d, generators +-e_i, ids "a1,...,ad"
        Heisenberg3,    // H_3(Z), generators x+-, y+-, ids "a,b,c"
        Lamplighter,    // Z/n wr Z, generators t, t^-1, s (and s^-1 for n>2),
                        // ids "cursor|p:v,p:v,..."
        CyclicProduct,  // base x C_n, ids "<base>@k"
        Sublattice,     // finite-index sublattice of Z^d with its own word
                        // metric; ids are coefficient vectors "a1,...,ad"
    };

    Kind kind = Kind::FreeAbelian;
    int d = 1;                                     // FreeAbelian / Sublattice rank
    long long n = 0;                               // lamp modulus / cyclic order
    std::vector<std::vector<long long>> matrix;    // Sublattice basis columns M[i][j] = row i, col j
    std::shared_ptr<GroupSpec> base;               // CyclicProduct base

    static GroupSpec free_abelian(int d);
    static GroupSpec heisenberg();
    static GroupSpec lamplighter(long long n);
    static GroupSpec cyclic_product(GroupSpec base, long long n);
    static GroupSpec sublattice(int d, std::vector<std::vector<long long>> m);

    // CLI syntax: zd:2, heis, lamp:3, sublattice:2:[[2,0],[0,2]], prod:<spec>:<n>
    static GroupSpec parse(const std::string& s);
    std::string to_string() const;

    int generator_degree() const;
    std::string identity_id() const;
    std::vector<std::string> neighbor_ids(const std::string& id) const;

    // Membership in the standard Folner set at level n (boxes for lattices,
    // normal-form boxes for Heisenberg, bounded-support configurations for
    // lamplighters).
    bool in_folner_level(const std::string& id, long long level) const;
};

// BFS enumeration from the identity; the returned window has
// interior_radius = radius (BFS runs one layer deeper so every interior
// vertex has a complete neighbor list).
WindowPtr enumerate_window(const GroupSpec& spec, int radius,
                           std::size_t budget_bytes = 0);

// Inclusion of the sublattice spanned by the columns of M into Z^d, as a
// QIMap from the sublattice window (word metric of its own generators) into
// a base window of the given radius. index = |det M|.
struct SublatticeInclusion {
    QIMap map;
    long long index = 0;
};
SublatticeInclusion sublattice_inclusion(const std::vector<std::vector<long long>>& M,
                                         int sub_radius, int base_radius,
                                         std::size_t budget_bytes = 0);

long long integer_determinant(const std::vector<std::vector<long long>>& M);

// Cartesian product of a window with the cycle C_n, plus the canonical
// embedding (layer 0) and projection.
struct CyclicProductResult {
    WindowPtr product;
    QIMap embed;    // base -> product
    QIMap project;  // product -> base
};
CyclicProductResult product_with_cyclic(const WindowPtr& base, long long n);

}  // namespace qiscale
