#pragma once

#include <stdexcept>
#include <string>

namespace ptower
{

// Base of every error thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct syntax_error : error {
    syntax_error(const std::string &msg, std::size_t pos)
        : error(msg + " at offset " + std::to_string(pos)), position(pos)
    {
    }
    std::size_t position;
};

// Zero numerator/denominator, bad interval bounds and similar.
struct domain_error : error {
    using error::error;
};

struct precision_exhausted : error {
    using error::error;
};

// Enclosure straddles a decimal cell boundary at the precision cap.
struct ambiguous_digit : error {
    using error::error;
};

struct magnitude_error : error {
    using error::error;
};

struct range_error : error {
    using error::error;
};

struct no_candidate : error {
    using error::error;
};

} // namespace ptower
