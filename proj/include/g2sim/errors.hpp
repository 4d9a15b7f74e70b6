#pragma once

#include <stdexcept>
#include <string>

namespace g2sim {

// Invalid configuration value (truncation order out of range, bad sigma, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Caller asked for something the contract forbids.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A bookkeeping invariant broke inside the engine; never swallowed.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace g2sim
