#pragma once

#include <stdexcept>
#include <string>

namespace igw {

/// Machine-readable error category, shared by the CLI exit path and the HTTP service.
enum class ErrorCode {
    invalid_argument,
    not_found,
    conflict,
    failed_precondition,
    validation_failed,
    io_error,
    malformed_record,
    no_aim,
    upstream_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace igw
