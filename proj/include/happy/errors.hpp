#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace happy {

// A value would need more digits (or a longer decimal run count) than the
// configured budget allows. Callers treat this as an honest truncation
// signal, never as a soft failure.
class RepresentationOverflow : public std::runtime_error {
public:
    explicit RepresentationOverflow(const std::string& what)
        : std::runtime_error(what) {}
};

// A dynamic-programming table would exceed the configured cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// The exact validity condition behind the closed form for g(e) failed.
class FormulaConditionFailed : public std::runtime_error {
public:
    explicit FormulaConditionFailed(const std::string& what)
        : std::runtime_error(what) {}
};

// No decomposition exists under the stated digit/term bounds.
class Infeasible : public std::runtime_error {
public:
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// Preimage target out of domain (t = 0).
class InvalidTarget : public std::runtime_error {
public:
    explicit InvalidTarget(const std::string& what)
        : std::runtime_error(what) {}
};

// Two run-length numbers with different bases were mixed.
class BaseMismatch : public std::runtime_error {
public:
    explicit BaseMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Text input rejected; position is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace happy
