#pragma once

#include <stdexcept>
#include <string>

namespace bwmdp {

/// Malformed input: bad JSON shape, bad rational syntax, floats without
/// an explicit rationalization request.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally well-formed input that violates a model invariant
/// (non-stochastic row, negative probability, denominator mismatch, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Discount factor outside [0, 1).
class GammaOutOfRange : public std::domain_error {
public:
    explicit GammaOutOfRange(const std::string& what) : std::domain_error(what) {}
};

/// Resource guard tripped: the policy space or the vertex-selection space
/// is too large to enumerate exactly.
class SpaceTooLarge : public std::runtime_error {
public:
    enum class Kind { PolicySpace, VertexSpace };

    SpaceTooLarge(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// An operation that requires the zero polynomial to be excluded got one.
class ZeroPolynomial : public std::domain_error {
public:
    explicit ZeroPolynomial(const std::string& what) : std::domain_error(what) {}
};

/// Clearing denominators did not produce integers (scale too small).
class NonIntegralCoefficient : public std::logic_error {
public:
    explicit NonIntegralCoefficient(const std::string& what) : std::logic_error(what) {}
};

/// An iterative solver failed to reach its tolerance within its budget.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency check failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace bwmdp
