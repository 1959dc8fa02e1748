#pragma once

#include <stdexcept>
#include <string>

namespace bolza {

/// Thrown when an operation needs a larger group ball than the one supplied
/// (e.g. a quotient distance asked for with a cutoff below its requirement).
class insufficient_ball : public std::runtime_error {
public:
    explicit insufficient_ball(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an enumeration would exceed its configured element cap.
class resource_limit : public std::runtime_error {
public:
    explicit resource_limit(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a numerical invariant that should hold by construction fails
/// (non-convergent reduction, non-real trace, failed postcondition checks).
class numerical_pathology : public std::runtime_error {
public:
    explicit numerical_pathology(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bolza
