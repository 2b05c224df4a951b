#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Error taxonomy shared by all modules. The CLI maps these onto its
// exit-code contract: ConfigError -> 2, everything else here -> 3.

// Incompatible structures: grid mismatch, region outside grid, ...
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside its mathematical domain (n < 1, t <= 0, L <= 0, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a hard resource bound (dense grid too large, too many modes).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A state with (near-)zero norm where a direction is required.
class DegenerateStateError : public std::runtime_error {
public:
    explicit DegenerateStateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical guard tripped (edge-amplitude assertion, truncation,
// undersampled oscillatory integrand). Carries a remedy hint in the message.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Power-law fit could not be performed (too few usable points).
class FitFailureError : public std::runtime_error {
public:
    explicit FitFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration file does not parse or validate.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace zeno
