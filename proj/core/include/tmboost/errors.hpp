#pragma once

#include <stdexcept>
#include <string>

namespace tmboost {

// Base for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration or usage; the CLI maps these to exit code 1.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data; the CLI maps these to exit code 2.
struct DataError : Error {
    using Error::Error;
};

struct DimensionMismatch : DataError {
    using DataError::DataError;
};

struct ParseError : DataError {
    using DataError::DataError;
};

struct EmptyTable : DataError {
    using DataError::DataError;
};

struct ZeroVector : DataError {
    using DataError::DataError;
};

struct SourceNotFound : DataError {
    using DataError::DataError;
};

struct MalformedLine : DataError {
    using DataError::DataError;
};

struct EmptyDataset : DataError {
    using DataError::DataError;
};

struct LengthMismatch : DataError {
    using DataError::DataError;
};

struct InvalidConfig : ConfigError {
    using ConfigError::ConfigError;
};

struct LabelOutOfRange : DataError {
    using DataError::DataError;
};

struct VocabMismatch : DataError {
    using DataError::DataError;
};

struct IndexOutOfRange : DataError {
    using DataError::DataError;
};

} // namespace tmboost
