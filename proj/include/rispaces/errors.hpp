#ifndef RISPACES_ERRORS_HPP
#define RISPACES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rispaces {

// Machine-readable failure codes surfaced through the CLI.
enum class ErrorCode {
    DomainMismatch,
    UnboundedRearrangement,
    NotLocallyIntegrable,
    InvalidGenerator,
    InvalidFunction,
    NotEmbedded,
    NotTrivialIdeal,
    UnsupportedForm,
    NoConvergence,
    Unclassifiable,
    InfiniteModular,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace rispaces

#endif
