#pragma once

#include <stdexcept>
#include <string>

namespace ppclab {

// Raised when user-supplied data (files, configs, sequences) fails semantic
// validation. Contract violations at the API level keep using the standard
// exceptions: std::invalid_argument for misuse, std::out_of_range for range
// and overflow errors.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ppclab
