#pragma once

#include <stdexcept>
#include <string>

namespace bisimlab
{

enum class ErrorKind
{
    Domain,       // argument outside the domain of an operation
    Validation,   // structure violates its invariants
    Data,         // malformed external input (JSON, text grammar)
    Resource,     // a configured size cap was exceeded
    Unsupported,  // valid input the operation does not handle
    Usage         // command-line misuse
};

class Error : public std::runtime_error
{
    ErrorKind _kind;

public:
    Error( ErrorKind kind, const std::string& what ) : std::runtime_error( what ), _kind{ kind } {}

    [[nodiscard]] ErrorKind kind() const { return _kind; }
};

[[noreturn]] inline void fail( ErrorKind kind, const std::string& what )
{
    throw Error( kind, what );
}

} // namespace bisimlab
