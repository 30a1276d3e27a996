// Error types shared across the solver and its tooling.
#pragma once

#include <stdexcept>
#include <string>

namespace stefan {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveParameter : ConfigError {
    explicit NonPositiveParameter(const std::string& key)
        : ConfigError("parameter must be positive: " + key), key(key) {}
    std::string key;
};

struct MissingKey : ConfigError {
    explicit MissingKey(const std::string& key)
        : ConfigError("missing required key: " + key), key(key) {}
    std::string key;
};

struct UnknownKey : ConfigError {
    explicit UnknownKey(const std::string& key)
        : ConfigError("unknown key: " + key), key(key) {}
    std::string key;
};

struct BoundaryMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnresolvableWidth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SignConditionViolated : std::runtime_error {
    SignConditionViolated(const std::string& what, double theta)
        : std::runtime_error(what), theta(theta) {}
    double theta;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PicardDivergence : NumericError {
    PicardDivergence(const std::string& what, long step)
        : NumericError(what), step(step) {}
    long step;
};

struct NonFiniteState : NumericError {
    NonFiniteState(const std::string& what, long step)
        : NumericError(what), step(step) {}
    long step;
};

struct InvalidInitialInterface : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConverging : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotRankOne : std::runtime_error {
    NotRankOne(const std::string& what, double sigma2)
        : std::runtime_error(what), sigma2(sigma2) {}
    double sigma2;  // second singular value of M - I
};

struct LambdaOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompatibleSpec : std::runtime_error {
    IncompatibleSpec(const std::string& what, double sigma2)
        : std::runtime_error(what), sigma2(sigma2) {}
    double sigma2;
};

struct UnknownScenario : ConfigError {
    using ConfigError::ConfigError;
};

struct MissingArtifacts : ConfigError {
    using ConfigError::ConfigError;
};

}  // namespace stefan
