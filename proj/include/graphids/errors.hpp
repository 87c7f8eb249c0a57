#pragma once

#include <stdexcept>
#include <string>

namespace graphids {

// Base for everything this library throws on contract violations.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time-variant schedule asked for a round past its last entry.
struct schedule_exhausted_error : error {
    using error::error;
};

// Adjacency matrix entries outside {0,1} or a zero diagonal.
struct invalid_adjacency_error : error {
    using error::error;
};

// Exhaustive routine invoked above its documented size budget.
struct size_limit_error : error {
    using error::error;
};

// Beta prior with a non-positive parameter.
struct invalid_prior_error : error {
    using error::error;
};

// Same arm reported twice in one observation batch.
struct duplicate_observation_error : error {
    using error::error;
};

// Observation outcome outside {0,1}.
struct invalid_outcome_error : error {
    using error::error;
};

// NaN or empty mass encountered inside a posterior integral.
struct numerical_failure_error : error {
    using error::error;
};

// Every candidate distribution carries zero information gain.
struct no_information_error : error {
    using error::error;
};

// LP constraint unattainable: required gain above max component.
struct infeasible_error : error {
    using error::error;
};

// Regret bound requested for a policy without one.
struct no_bound_error : error {
    using error::error;
};

// Config or data file rejected; message carries key and line.
struct parse_error : error {
    using error::error;
};

// File could not be opened or written.
struct io_error : error {
    using error::error;
};

} // namespace graphids
