#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qiscale/cayley.hpp"
#include "qiscale/qi_map.hpp"
#include "qiscale/tree_partition.hpp"

namespace qiscale {

struct EscalationStep {
    int L = 0;
    int matched = 0;
    int deficiency = 0;
};

struct RealizationResult {
    bool success = false;
    int L = -1;  // achieved displacement bound on success
    // (domain index, codomain index) pairs over the trimmed interiors.
    std::vector<std::pair<std::int32_t, std::int32_t>> bijection;
    std::vector<EscalationStep> escalation;
    std::vector<std::string> hall_witness;  // empty on success
    bool witness_on_domain_side = false;
    int trimmed_domain = 0, trimmed_codomain = 0;  // rim vertices dropped
};

std::string realization_to_json(const QIMap& f, const RealizationResult& r);

// Escalating-L bipartite matching between the trimmed interiors, with edges
// {(x,y) : d(f(x),y) <= L}. On failure the result carries a Hall certificate
// A with |N(A)| < |A| at L = L_max.
RealizationResult realize_bijection(const QIMap& f, int L_max);

// iota o f o pi : X x C_n -> Y x C_m through the layer-0 section.
struct LiftResult {
    QIMap lift;
    WindowPtr domain_product;
    WindowPtr codomain_product;
};
LiftResult lift_to_products(const QIMap& f, long long m, long long n);

struct MnRealization {
    Partition partition_domain;    // pieces of size m
    Partition partition_codomain;  // pieces of size n
    // psi as pairs of piece indices (exact pieces only).
    std::vector<std::pair<std::size_t, std::size_t>> psi;
    QIMap g;  // x -> basepoint of psi(piece(x))
    int L = -1;
    int piece_diameter = 0;       // D
    int displacement_bound = 0;   // C*D + K + (L+1)*D
    int max_displacement = 0;     // observed d(f(x), g(x)) on certified vertices
    int trimmed_pieces_domain = 0, trimmed_pieces_codomain = 0;
};

// Rational realization: partitions into pieces of sizes m and n, a matched
// piece bijection, and the induced map g with g(P) inside psi(P). Throws
// NoBijectionWithinL when the piece matching fails.
MnRealization realize_mn(const QIMap& f, int m, int n, int L_max,
                         std::uint64_t seed);

}  // namespace qiscale
