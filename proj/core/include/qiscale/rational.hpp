#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "qiscale/errors.hpp"

namespace qiscale {

using Rat = boost::rational<long long>;

inline double to_double(const Rat& q) {
    return static_cast<double>(q.numerator()) /
           static_cast<double>(q.denominator());
}

inline std::string format_rat(const Rat& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Accepts "p" or "p/q".
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s), 1);
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw ParseError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + s);
    } catch (const std::out_of_range&) {
        throw ParseError("rational out of range: " + s);
    }
}

inline Rat require_positive(const Rat& q, const char* what) {
    if (q <= Rat(0)) throw ZeroOrNegative(std::string(what) + " must be positive");
    return q;
}

}  // namespace qiscale
