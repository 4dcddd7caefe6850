#pragma once

#include <stdexcept>
#include <string>

namespace mr {

// Instance text that does not conform to the schema (missing field, wrong type).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Solver asked to do more objective evaluations than its budget allows.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Exact oracle invoked on a group too large to enumerate.
class OracleLimitError : public std::runtime_error {
public:
    explicit OracleLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mr
