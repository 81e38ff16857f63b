#pragma once

#include <stdexcept>
#include <string>

namespace foil {

// Error categories map 1:1 onto CLI exit codes (see tools/foilmesh.cpp and
// README). Every throw site goes through one of the derived types so callers
// can grep a single-line "error[category]: ..." diagnostic.
enum class ErrorCategory {
    config,      // invalid parameter or config key
    io,          // file open/write failures
    parse,       // malformed input file (carries line numbers)
    degenerate,  // degenerate or insufficient geometric input
    cfl,         // time step violates the stability bound
    numeric,     // non-finite values, divergence, undefined projection
    structural,  // inconsistent mesh/state (bad indices, length mismatch)
};

inline const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config: return "config";
        case ErrorCategory::io: return "io";
        case ErrorCategory::parse: return "parse";
        case ErrorCategory::degenerate: return "degenerate-input";
        case ErrorCategory::cfl: return "cfl-violation";
        case ErrorCategory::numeric: return "numeric";
        case ErrorCategory::structural: return "structural";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), cat_(cat) {}
    ErrorCategory category() const { return cat_; }

private:
    ErrorCategory cat_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(ErrorCategory::config, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorCategory::io, m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorCategory::parse, m) {}
};
struct DegenerateInputError : Error {
    explicit DegenerateInputError(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};
struct CflError : Error {
    explicit CflError(const std::string& m) : Error(ErrorCategory::cfl, m) {}
};
struct NumericError : Error {
    explicit NumericError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};
struct StructuralError : Error {
    explicit StructuralError(const std::string& m) : Error(ErrorCategory::structural, m) {}
};

}  // namespace foil
