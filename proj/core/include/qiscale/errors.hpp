#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qiscale {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation would have to look at vertices whose neighbor lists are
// not certified complete (the window fringe).
struct OutOfInterior : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    BudgetExceeded(const std::string& msg, std::size_t partial)
        : Error(msg), partial_count(partial) {}
    std::size_t partial_count;
};

struct WindowMismatch : Error {
    using Error::Error;
};

struct WindowTooSmall : Error {
    using Error::Error;
};

struct EmptySet : Error {
    using Error::Error;
};

struct DiameterTooSmall : Error {
    using Error::Error;
};

struct NoPreimageWithinRadius : Error {
    using Error::Error;
};

struct NoBijectionWithinL : Error {
    NoBijectionWithinL(const std::string& msg, int l_max,
                       std::vector<std::string> witness, bool witness_on_left)
        : Error(msg), L_max(l_max), hall_witness(std::move(witness)),
          witness_on_domain_side(witness_on_left) {}
    int L_max;
    std::vector<std::string> hall_witness;  // vertex ids of the deficient set A
    bool witness_on_domain_side;
};

struct ZeroOrNegative : Error {
    using Error::Error;
};

struct BadModulus : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace qiscale
