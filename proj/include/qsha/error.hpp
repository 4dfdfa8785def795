#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsha {

/// Base class of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data: shape mismatches, missing symmetrizer entries,
/// out-of-range indices.
struct StructuralError : Error {
    using Error::Error;
};

/// Mathematically invalid argument (e.g. a non-cycle term where a cycle
/// is required).
struct DomainError : Error {
    using Error::Error;
};

/// A weight function violates the compatibility condition it must satisfy.
struct WeightError : Error {
    using Error::Error;
};

/// The input cannot be handled (e.g. oriented cycles where an acyclic
/// quiver is required).
struct UnsupportedInputError : Error {
    using Error::Error;
};

/// Exact multivariate division left a nonzero remainder.
struct DivisibilityError : Error {
    using Error::Error;
};

/// A computation exceeded the configured term budget.
struct ResourceError : Error {
    using Error::Error;
};

/// An internal consistency assertion failed; indicates a library bug.
struct InternalError : Error {
    using Error::Error;
};

namespace detail {
inline std::atomic<std::size_t>& term_limit_cell() {
    static std::atomic<std::size_t> cap{1'000'000};
    return cap;
}
} // namespace detail

/// Global cap on the number of terms any single polynomial may reach.
/// Shuffle sums grow factorially; the cap turns runaway growth into a
/// ResourceError instead of an OOM.
inline std::size_t term_limit() { return detail::term_limit_cell().load(); }

inline void set_term_limit(std::size_t n) { detail::term_limit_cell().store(n); }

inline void guard_term_count(std::size_t n) {
    if (n > term_limit())
        throw ResourceError("term budget exceeded: " + std::to_string(n) + " > " +
                            std::to_string(term_limit()));
}

} // namespace qsha
