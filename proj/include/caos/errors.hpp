#pragma once

#include <stdexcept>
#include <string>

namespace caos {

// Error taxonomy mirrors the CLI exit statuses: configuration errors
// (bad parameters, capacity, geometry, framing preconditions) exit 2,
// file format errors exit 3, filesystem errors exit 4.

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace caos
