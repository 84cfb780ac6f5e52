#pragma once

#include <stdexcept>
#include <string>

namespace occ {

// Failure categories surfaced by the library. The CLI maps `config` to
// exit code 2 and everything else to exit code 3.
enum class ErrorKind {
    invalid_argument,
    degenerate_levels,
    degenerate_signal,
    header_not_found,
    insufficient_extrema,
    incomplete_packet,
    config,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const {
        switch (kind_) {
            case ErrorKind::invalid_argument:     return "invalid-argument";
            case ErrorKind::degenerate_levels:    return "degenerate-levels";
            case ErrorKind::degenerate_signal:    return "degenerate-signal";
            case ErrorKind::header_not_found:     return "header-not-found";
            case ErrorKind::insufficient_extrema: return "insufficient-extrema";
            case ErrorKind::incomplete_packet:    return "incomplete-packet";
            case ErrorKind::config:               return "config";
        }
        return "unknown";
    }

private:
    ErrorKind kind_;
};

}  // namespace occ
