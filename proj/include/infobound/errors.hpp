#pragma once

#include <stdexcept>
#include <string>

namespace infobound {

// Tensor/layer dimension mismatches. Messages name the offending layer index
// where one exists.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation is asked about a layer kind it does not apply to
// (e.g. the rank test on a pooling layer).
class InapplicableLayerError : public std::invalid_argument {
public:
    explicit InapplicableLayerError(const std::string& what) : std::invalid_argument(what) {}
};

// Enumeration would exceed the configured joint-state budget.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Bad or missing configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace infobound
