#pragma once

#include <stdexcept>
#include <string>

namespace qnet {

enum class Errc {
    invalid_parameter,
    invalid_config,
    invalid_node,
    same_node,
    degenerate_input,
    no_peak,
    missing_column,
    missing_input,
    io_error,
    parse_error,
    unknown_key,
    constraint_violation,
    unsupported,
};

constexpr const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::invalid_parameter:    return "invalid-parameter";
        case Errc::invalid_config:       return "invalid-config";
        case Errc::invalid_node:         return "invalid-node";
        case Errc::same_node:            return "same-node";
        case Errc::degenerate_input:     return "degenerate-input";
        case Errc::no_peak:              return "no-peak";
        case Errc::missing_column:       return "missing-column";
        case Errc::missing_input:        return "missing-input";
        case Errc::io_error:             return "io-error";
        case Errc::parse_error:          return "malformed";
        case Errc::unknown_key:          return "unknown-key";
        case Errc::constraint_violation: return "constraint-violation";
        case Errc::unsupported:          return "unsupported";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    /// True for errors caused by bad user input (config files, CLI values).
    bool is_config_error() const noexcept {
        switch (code_) {
            case Errc::invalid_parameter:
            case Errc::invalid_config:
            case Errc::parse_error:
            case Errc::unknown_key:
            case Errc::constraint_violation:
            case Errc::missing_input:
            case Errc::missing_column:
                return true;
            default:
                return false;
        }
    }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qnet
