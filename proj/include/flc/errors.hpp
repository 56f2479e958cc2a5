#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};
struct ParseError : Error {
    using Error::Error;
};
struct MissingVariable : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    SingularMatrix() : Error("singular matrix") {}
};
struct InvalidDimension : Error {
    using Error::Error;
};
struct PairNotInDelta : Error {
    using Error::Error;
};
struct NotAdapted : Error {
    using Error::Error;
};
struct WrongFamily : Error {
    using Error::Error;
};
struct FamilyMismatch : Error {
    using Error::Error;
};
struct DenominatorVanished : Error {
    using Error::Error;
};
struct ArityMismatch : Error {
    using Error::Error;
};
struct NotIsomorphic : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct NoSubsetMatched : Error {
    using Error::Error;
};

struct MultipleSubsetsMatched : Error {
    MultipleSubsetsMatched(std::string what, std::vector<int> matches)
        : Error(std::move(what)), matches(std::move(matches)) {}
    std::vector<int> matches;
};

/// A transformed structure tensor that left the family shape. `entries`
/// lists the offending (i, j, k) positions.
struct TemplateMismatch : Error {
    struct Entry {
        int i, j, k;
        std::string expected, actual;
    };
    TemplateMismatch(std::string what, std::vector<Entry> entries)
        : Error(std::move(what)), entries(std::move(entries)) {}
    std::vector<Entry> entries;
};

}  // namespace flc
