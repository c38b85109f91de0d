#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace girth7 {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field
struct NonPrimeCharacteristic : Error {
    explicit NonPrimeCharacteristic(unsigned long long p)
        : Error("characteristic " + std::to_string(p) + " is not prime") {}
};
struct NoIrreducibleFound : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in finite field") {}
};
struct FieldMismatch : Error {
    FieldMismatch() : Error("operands belong to different fields") {}
};

// projective geometry
struct IdenticalPoints : Error {
    IdenticalPoints() : Error("the two points coincide; no unique line") {}
};
struct NotAGrid : Error {
    using Error::Error;
};

// graph surgery
struct DuplicateEdge : Error {
    explicit DuplicateEdge(const std::string& which)
        : Error("edge already present: " + which) {}
};
struct UnknownVertex : Error {
    explicit UnknownVertex(int v)
        : Error("unknown vertex id " + std::to_string(v)) {}
    explicit UnknownVertex(const std::string& label)
        : Error("unknown vertex label " + label) {}
};

// matchings
struct OddK : Error {
    explicit OddK(int k) : Error("k = " + std::to_string(k) + " must be even") {}
};
struct GridNotSquare : Error {
    GridNotSquare() : Error("grid is not square") {}
};
struct KTooSmall : Error {
    explicit KTooSmall(int k)
        : Error("grid size k = " + std::to_string(k) +
                " is below the required minimum of 7") {}
};
struct OddLineLength : Error {
    OddLineLength() : Error("a deleted line carries an odd number of points") {}
};

// constructions
struct InvalidParams : Error {
    using Error::Error;
};
struct KEqualsQUnsupported : Error {
    explicit KEqualsQUnsupported(int k)
        : Error("k = q = " + std::to_string(k) +
                " is unsupported: the construction needs k < q") {}
};
struct ConstructionError : Error {
    using Error::Error;
};

// verification
struct CertificationFailed : Error {
    explicit CertificationFailed(const std::string& claim)
        : Error("certification failed: " + claim), claim(claim) {}
    std::string claim;
};

// serialization
struct MalformedInput : Error {
    MalformedInput(const std::string& what, std::size_t byte_offset)
        : Error(what + " (byte " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    std::size_t offset;
};

}  // namespace girth7
