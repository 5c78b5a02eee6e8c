#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace scs {

/// Error taxonomy mirrored by the CLI exit codes.
enum class ErrorKind { Config = 2, Data = 3, Numerical = 4 };

/// Exception carrying a stable machine-readable code alongside the
/// human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& code() const noexcept { return code_; }
    [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void throw_config(const std::string& code, const std::string& message) {
    throw Error(ErrorKind::Config, code, message);
}

[[noreturn]] inline void throw_data(const std::string& code, const std::string& message) {
    throw Error(ErrorKind::Data, code, message);
}

[[noreturn]] inline void throw_numerical(const std::string& code, const std::string& message) {
    throw Error(ErrorKind::Numerical, code, message);
}

} // namespace scs
