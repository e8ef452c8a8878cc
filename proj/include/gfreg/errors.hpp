#pragma once

#include <stdexcept>
#include <string>

namespace gfreg {

// Error taxonomy. The CLI maps parse/config errors to exit code 2 and
// numeric/runtime failures to exit code 3; everything derives from gfreg::error
// so library users can catch one type.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad user input: spec strings, config files, CSV data
struct parse_error : error {
    using error::error;
};

struct invalid_config : parse_error {
    using parse_error::parse_error;
};

// numeric failures detected while computing
struct numeric_error : error {
    using error::error;
};

// requested scale outside the admissible window of the grid
struct scale_window_error : numeric_error {
    using numeric_error::numeric_error;
};

// grid too coarse to resolve the frame transition band
struct resolution_error : numeric_error {
    using numeric_error::numeric_error;
};

// period too short to hold the requested translate family
struct domain_size_error : numeric_error {
    using numeric_error::numeric_error;
};

// too few points for a scaling fit
struct insufficiency_error : numeric_error {
    using numeric_error::numeric_error;
};

// nonpositive values fed to a log-log fit
struct fit_domain_error : numeric_error {
    using numeric_error::numeric_error;
};

// an input whose functional vanishes where a ratio is required
struct degenerate_input_error : numeric_error {
    using numeric_error::numeric_error;
};

}
