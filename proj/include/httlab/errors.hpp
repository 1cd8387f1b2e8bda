#pragma once

#include <stdexcept>
#include <string>

namespace httlab {

// Invalid model descriptors, bad parameters, malformed configs.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation that started from valid inputs failed to produce a usable
// result (divergence, failed verification, singular transform, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace httlab
