#pragma once

#include <stdexcept>
#include <string>

namespace augbench {

// Base for all recoverable failures raised by the library. The CLI maps
// DataError subtypes to exit code 2 and NumericalFailureError to exit code 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public Error {
public:
    using Error::Error;
};

class FileNotFoundError : public DataError {
public:
    using DataError::DataError;
};

class UnsupportedFormatError : public DataError {
public:
    using DataError::DataError;
};

class CorruptImageError : public DataError {
public:
    using DataError::DataError;
};

class IoError : public DataError {
public:
    using DataError::DataError;
};

class DimensionMismatchError : public DataError {
public:
    using DataError::DataError;
};

class DegenerateImageError : public DataError {
public:
    using DataError::DataError;
};

class EmptyDatasetError : public DataError {
public:
    using DataError::DataError;
};

class NotTrimmedError : public DataError {
public:
    using DataError::DataError;
};

class ShapeMismatchError : public DataError {
public:
    using DataError::DataError;
};

class InsufficientFoldsError : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

class NumericalFailureError : public Error {
public:
    using Error::Error;
};

} // namespace augbench
