#pragma once

#include <stdexcept>
#include <string>

namespace ifaudit {

// Base class for every toolkit error. The CLI maps all of these to exit
// code 2 (usage / input error); "property violated" is a result, not an
// error, and maps to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class CsvError : public Error {
public:
    using Error::Error;
};

class JsonError : public Error {
public:
    using Error::Error;
};

// Construction-time invariant violations on specs (metric params out of
// range, fold with a >= b, empty composition, ...).
class InvalidSpec : public Error {
public:
    using Error::Error;
};

class MissingScore : public Error {
public:
    explicit MissingScore(const std::string& id)
        : Error("missing score for id '" + id + "'"), id(id) {}
    std::string id;
};

class UnknownId : public Error {
public:
    explicit UnknownId(const std::string& id)
        : Error("unknown id '" + id + "'"), id(id) {}
    std::string id;
};

class NonFiniteScore : public Error {
public:
    explicit NonFiniteScore(const std::string& id)
        : Error("non-finite score for id '" + id + "'"), id(id) {}
    std::string id;
};

class NonFiniteInput : public Error {
public:
    NonFiniteInput() : Error("non-finite input value") {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)),
          expected(expected),
          got(got) {}
    std::size_t expected;
    std::size_t got;
};

class MissingUid : public Error {
public:
    explicit MissingUid(const std::string& id)
        : Error("individual '" + id + "' has no uid but a uid-space metric was requested"),
          id(id) {}
    std::string id;
};

class InvalidDomain : public Error {
public:
    InvalidDomain(double lo, double hi)
        : Error("invalid domain [" + std::to_string(lo) + ", " + std::to_string(hi) + ")") {}
};

class UniverseMismatch : public Error {
public:
    UniverseMismatch() : Error("id universes differ") {}
};

class OutcomeSetMismatch : public Error {
public:
    OutcomeSetMismatch() : Error("outcome label sets differ") {}
};

class MissingIndividual : public Error {
public:
    explicit MissingIndividual(const std::string& id)
        : Error("predictor table lacks id '" + id + "'"), id(id) {}
    std::string id;
};

class UnknownFamily : public Error {
public:
    explicit UnknownFamily(const std::string& name)
        : Error("unknown transform family '" + name + "'"), name(name) {}
    std::string name;
};

class UnknownPreset : public Error {
public:
    explicit UnknownPreset(const std::string& name)
        : Error("unknown scenario preset '" + name + "'"), name(name) {}
    std::string name;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class NoAdmissibleCandidate : public Error {
public:
    NoAdmissibleCandidate() : Error("no admissible transform candidate") {}
};

}  // namespace ifaudit
