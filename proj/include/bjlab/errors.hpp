#pragma once

#include <stdexcept>
#include <string>

namespace bjlab {

// Base class for all domain errors raised by this library. Parsing and
// validation failures derive from it so callers can map them to a single
// "bad input data" exit path.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input dimensions disagree (point vs space, operator vs space, ...).
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Vertex data does not span the ambient space: the "ball" would be flat.
class DegenerateBall : public Error {
public:
    explicit DegenerateBall(const std::string& msg) : Error(msg) {}
};

// Facet data does not bound the ball in every direction.
class UnboundedBall : public Error {
public:
    explicit UnboundedBall(const std::string& msg) : Error(msg) {}
};

// An operation that needs a nonzero vector received zero.
class ZeroVector : public Error {
public:
    explicit ZeroVector(const std::string& msg) : Error(msg) {}
};

class NotAnExtremePoint : public Error {
public:
    explicit NotAnExtremePoint(const std::string& msg) : Error(msg) {}
};

class NoSuchSubface : public Error {
public:
    explicit NoSuchSubface(const std::string& msg) : Error(msg) {}
};

// A theorem-shaped routine was called with its hypothesis violated
// (e.g. transport of a face under an operator that does not preserve
// orthogonality on the required set).
class HypothesisViolated : public Error {
public:
    explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

class NotBijective : public Error {
public:
    explicit NotBijective(const std::string& msg) : Error(msg) {}
};

class NotProperSubspace : public Error {
public:
    explicit NotProperSubspace(const std::string& msg) : Error(msg) {}
};

class EmptyCandidateSet : public Error {
public:
    explicit EmptyCandidateSet(const std::string& msg) : Error(msg) {}
};

// A bundled counterexample failed to reproduce. This is build-stopping:
// it signals a defect in the library itself, never in user data.
class ReproductionFailure : public std::logic_error {
public:
    explicit ReproductionFailure(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace bjlab
