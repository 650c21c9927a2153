#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace euclid {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class VariableClash : public Error {
public:
    using Error::Error;
};

class NotEuclidean : public Error {
public:
    NotEuclidean() : Error("frame is not Euclidean") {}
};

class InvalidIndex : public Error {
public:
    using Error::Error;
};

class WorldNotFound : public Error {
public:
    explicit WorldNotFound(const std::string& w) : Error("unknown world: " + w) {}
};

class Overlap : public Error {
public:
    using Error::Error;
};

class MalformedInput : public Error {
public:
    using Error::Error;
};

class UncoveredVariable : public Error {
public:
    using Error::Error;
};

class ResourceLimit : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class InvalidBudget : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class NotACongruence : public Error {
public:
    using Error::Error;
};

}  // namespace euclid
