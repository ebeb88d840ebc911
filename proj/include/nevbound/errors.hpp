#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nevbound {

// Argument outside the domain of a function (t below a domain start, R below a threshold).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A numeric search ran past its hard cap, e.g. a truncation index or a bisection bracket.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::range_error {
    using std::range_error::range_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A majorization hypothesis fails at every scaling; witness is the offending index.
struct HypothesisViolation : std::runtime_error {
    HypothesisViolation(const std::string& what, std::size_t witness_index)
        : std::runtime_error(what), witness(witness_index) {}
    std::size_t witness;
};

}  // namespace nevbound
