#pragma once

#include <stdexcept>
#include <string>

namespace globalprop {

// Exit-code mapping used by the CLI: ConfigError -> 2, DivergenceError -> 3,
// NumericalError -> 4.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace globalprop
