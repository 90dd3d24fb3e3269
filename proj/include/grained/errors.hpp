#pragma once

#include <stdexcept>
#include <string>

namespace grained {

// Argument outside a function's mathematical domain (validity floor,
// nesting cap, singular point).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Configured budget exceeded (sieve range, enumeration nodes, scan cap).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested tolerance not reached; carries the best estimate obtained and
// the error actually achieved so callers can decide whether to keep it.
struct accuracy_error : std::runtime_error {
    double best_estimate;
    double achieved_error;

    accuracy_error(const std::string& what, double best, double achieved)
        : std::runtime_error(what), best_estimate(best), achieved_error(achieved) {}
};

} // namespace grained
