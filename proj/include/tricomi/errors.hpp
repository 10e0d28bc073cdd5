#pragma once

#include <stdexcept>
#include <string>

namespace tricomi {

/// Raised when a parameter is outside the domain an operation accepts.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by Bessel-dependent evaluators when delta < 0. That regime is only
/// reachable through the linear F1 ODE (see odelab.hpp).
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The adaptive integrator could not keep the step size above its floor.
class StiffnessError : public std::runtime_error {
public:
    StiffnessError(const std::string& msg, double t) : std::runtime_error(msg), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::string path)
        : std::runtime_error(what + ": " + path), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace tricomi
