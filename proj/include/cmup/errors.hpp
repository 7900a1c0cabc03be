#pragma once

#include <stdexcept>

namespace cmup {

// Input outside an operation's mathematical domain (non-finite, wrong sign, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Root finding was asked to work on an interval with no sign change.
struct bracket_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iteration hit its term/step budget before reaching tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A scan exhausted its interval without finding the feature it looks for.
struct search_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A function sample came out non-finite; message reports the abscissa.
struct evaluation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request outside the achievable or configured range; message reports the range.
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Computed quantities violate an identity they are required to satisfy.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace cmup
