#pragma once

#include <stdexcept>
#include <string>

namespace scalerd {

enum class ErrorKind {
    validation,
    io,
    numeric,
};

const char* to_string(ErrorKind kind);

/// Base error for the library. `stage()` names the pipeline stage that raised
/// it when the error was propagated through `predict`; empty otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string stage = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }
    const std::string& detail() const noexcept { return detail_; }

    Error with_stage(const std::string& stage) const;

private:
    ErrorKind kind_;
    std::string stage_;
    std::string detail_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message, std::string stage = {})
        : Error(ErrorKind::validation, message, std::move(stage)) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message, std::string stage = {})
        : Error(ErrorKind::io, message, std::move(stage)) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& message, std::string stage = {})
        : Error(ErrorKind::numeric, message, std::move(stage)) {}
};

}  // namespace scalerd
