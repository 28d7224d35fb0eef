#pragma once

#include <stdexcept>
#include <string>

namespace editgate {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedEdit : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    size_t line_number;
};

struct UnknownQueryType : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ProviderUnavailable : Error {
    using Error::Error;
};

struct EmptyMemory : Error {
    EmptyMemory() : Error("edit memory is empty") {}
};

struct SizeOutOfRange : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct EmptyField : Error {
    using Error::Error;
};

struct EmptyDemoLibrary : Error {
    EmptyDemoLibrary() : Error("demonstration library is empty") {}
};

struct ScriptExhausted : Error {
    using Error::Error;
};

struct UpstreamError : Error {
    UpstreamError(const std::string& msg, int status) : Error(msg), status_code(status) {}
    int status_code;
};

struct ExhaustedRetries : Error {
    using Error::Error;
};

struct NliUnavailable : Error {
    using Error::Error;
};

struct ZeroVariance : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

}  // namespace editgate
