#include "qiscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qiscale/errors.hpp"

namespace qiscale {

Rat compose_factors(const Rat& k1, const Rat& k2) {
    require_positive(k1, "compose_factors");
    require_positive(k2, "compose_factors");
    return k1 * k2;
}

Rat inverse_factor(const Rat& k) {
    require_positive(k, "inverse_factor");
    return Rat(1) / k;
}

Rat index_ratio(long long index) {
    if (index <= 0) throw ZeroOrNegative("index_ratio: index must be positive");
    return Rat(1, index);
}

std::vector<long long> prime_factors(long long n) {
    if (n <= 0) throw ZeroOrNegative("prime_factors of a nonpositive number");
    std::vector<long long> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

ScalingGroupDesc ScalingGroupDesc::trivial() { return {}; }

ScalingGroupDesc ScalingGroupDesc::prime_generated(std::vector<long long> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes)
        if (p < 2 || prime_factors(p) != std::vector<long long>{p})
            throw Error("prime_generated: " + std::to_string(p) + " is not prime");
    if (primes.empty()) return trivial();
    ScalingGroupDesc g;
    g.kind = Kind::PrimeGenerated;
    g.primes = std::move(primes);
    return g;
}

ScalingGroupDesc ScalingGroupDesc::all_positive_reals() {
    ScalingGroupDesc g;
    g.kind = Kind::AllPositiveReals;
    return g;
}

ScalingGroupDesc ScalingGroupDesc::parse(const std::string& s) {
    if (s == "trivial") return trivial();
    if (s == "all") return all_positive_reals();
    if (s.rfind("primes:", 0) == 0) {
        std::vector<long long> primes;
        std::stringstream ss(s.substr(7));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                primes.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw ParseError("bad prime list entry: " + tok);
            }
        }
        if (primes.empty()) throw ParseError("empty prime list in " + s);
        return prime_generated(std::move(primes));
    }
    throw ParseError("unknown scaling group: " + s);
}

std::string ScalingGroupDesc::to_string() const {
    switch (kind) {
        case Kind::Trivial:
            return "trivial";
        case Kind::AllPositiveReals:
            return "all";
        case Kind::PrimeGenerated: {
            std::string out = "primes:";
            for (std::size_t i = 0; i < primes.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(primes[i]);
            }
            return out;
        }
    }
    return "trivial";
}

bool sc_contains(const ScalingGroupDesc& g, const Rat& x) {
    require_positive(x, "sc_contains");
    switch (g.kind) {
        case ScalingGroupDesc::Kind::AllPositiveReals:
            return true;
        case ScalingGroupDesc::Kind::Trivial:
            return x == Rat(1);
        case ScalingGroupDesc::Kind::PrimeGenerated: {
            auto supported = [&](long long v) {
                for (auto p : g.primes)
                    while (v % p == 0) v /= p;
                return v == 1;
            };
            return supported(x.numerator()) && supported(x.denominator());
        }
    }
    return false;
}

ScalingGroupDesc lamplighter_sc(long long n, Endedness ends) {
    if (n < 2) throw BadModulus("lamplighter_sc: modulus must be >= 2");
    if (ends == Endedness::OneEnded) return ScalingGroupDesc::trivial();
    return ScalingGroupDesc::prime_generated(prime_factors(n));
}

namespace {

// Exact integer k-th root, or 0 if none.
long long exact_root(long long n, int k) {
    auto r = static_cast<long long>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    for (long long c = std::max(2LL, r - 2); c <= r + 2; ++c) {
        long long acc = 1;
        bool over = false;
        for (int i = 0; i < k; ++i) {
            if (acc > n / c) {
                over = true;
                break;
            }
            acc *= c;
        }
        if (!over && acc == n) return c;
    }
    return 0;
}

// n = base^exp with base primitive (not itself a proper power).
std::pair<long long, int> primitive_base(long long n) {
    for (int k = static_cast<int>(std::log2(static_cast<double>(n))) + 1; k >= 2; --k)
        if (auto r = exact_root(n, k)) return {r, k};
    return {n, 1};
}

}  // namespace

LampQIResult qi_lamplighter_predicate(long long n, long long m,
                                      const ScalingGroupDesc& sc) {
    if (n < 2 || m < 2) throw BadModulus("qi_lamplighter_predicate: moduli must be >= 2");
    LampQIResult res;
    auto [bn, en] = primitive_base(n);
    auto [bm, em] = primitive_base(m);
    if (bn != bm) return res;
    res.base = bn;
    res.exp_n = en;
    res.exp_m = em;
    res.qi = sc_contains(sc, Rat(en, em));
    return res;
}

}  // namespace qiscale
