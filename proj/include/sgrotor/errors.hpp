#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sgr {

// config / validation problems -> CLI exit 2, message names the offending key
class config_error : public std::runtime_error {
public:
    config_error(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// model-validity violations (e.g. projection assumptions)
class validity_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// integration failures carry the last good time so callers can diagnose
class integration_error : public std::runtime_error {
public:
    integration_error(const std::string& what, double t_last)
        : std::runtime_error(what + " (last good t = " + std::to_string(t_last) + " s)"),
          t_last_(t_last) {}
    double t_last() const noexcept { return t_last_; }

private:
    double t_last_;
};

} // namespace sgr
