#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace redcap {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A device capability limit would be exceeded. The message names the limit.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// A type invariant was violated at construction/validation time.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An analysis operation was called with inputs outside its contract.
class AnalysisError : public Error {
public:
    using Error::Error;
};

/// One problem found while parsing a scenario file.
struct ParseIssue {
    enum class Kind { Syntax, UnknownKey, MissingSection, Invariant, BadReference };
    Kind kind = Kind::Invariant;
    std::string path;     // JSON pointer-ish location, e.g. "/profiles/0/max_bandwidth_mhz"
    std::string message;
};

/// Scenario parsing/validation failure carrying every issue found.
class ScenarioError : public Error {
public:
    ScenarioError(std::string summary, std::vector<ParseIssue> issues)
        : Error(std::move(summary)), issues_(std::move(issues)) {}

    const std::vector<ParseIssue>& issues() const { return issues_; }

private:
    std::vector<ParseIssue> issues_;
};

} // namespace redcap
