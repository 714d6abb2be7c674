#pragma once

#include <string>
#include <vector>

#include "qiscale/rational.hpp"

namespace qiscale {

// Scaling factors of quasi-k-to-one maps form a group under composition.
Rat compose_factors(const Rat& k1, const Rat& k2);
Rat inverse_factor(const Rat& k);
// Factor of a finite-index inclusion: 1/index.
Rat index_ratio(long long index);

std::vector<long long> prime_factors(long long n);  // distinct, sorted

// Subgroups of (R_{>0}, *) arising as scaling groups.
struct ScalingGroupDesc {
    enum class Kind {
        Trivial,           // {1}
        PrimeGenerated,    // rationals with support in `primes`
        AllPositiveReals,  // symbolic: every positive real
    };
    Kind kind = Kind::Trivial;
    std::vector<long long> primes;  // distinct, sorted

    static ScalingGroupDesc trivial();
    static ScalingGroupDesc prime_generated(std::vector<long long> primes);
    static ScalingGroupDesc all_positive_reals();

    // CLI syntax: trivial | all | primes:2,3
    static ScalingGroupDesc parse(const std::string& s);
    std::string to_string() const;
};

bool sc_contains(const ScalingGroupDesc& g, const Rat& x);

enum class Endedness { OneEnded, TwoEnded };

// Scaling group of the lamplighter F wr G with F = Z/n: trivial over a
// one-ended base, the primes of n over a two-ended base.
ScalingGroupDesc lamplighter_sc(long long n, Endedness ends);

struct LampQIResult {
    bool qi = false;
    // On a shared primitive base k0 with n = k0^r, m = k0^s; r/s must lie in
    // the scaling group. base = 0 when no common base exists.
    long long base = 0;
    int exp_n = 0, exp_m = 0;
};

// Decides QI of Z/n wr Z and Z/m wr Z against the scaling group of the
// target ambient geometry.
LampQIResult qi_lamplighter_predicate(long long n, long long m,
                                      const ScalingGroupDesc& sc);

}  // namespace qiscale
