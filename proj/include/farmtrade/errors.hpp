#pragma once

#include <stdexcept>
#include <string>

namespace farmtrade {

// Error taxonomy mirrors the CLI exit codes: config=2, data=3, invariant=4.

// Invalid configuration: bad tariff ordering, malformed scenario file, ...
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid external data: unreadable or malformed trace files, length mismatches, ...
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Broken internal contract: precondition violations, conservation breaches, ...
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace farmtrade
