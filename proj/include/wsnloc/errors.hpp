#pragma once

#include <stdexcept>
#include <string>

namespace wsnloc {

// Invalid experiment or component configuration. key() names the offending
// configuration key when one is known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// A numeric operation was asked to work outside its domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wsnloc
