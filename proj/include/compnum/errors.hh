#ifndef COMPNUM_GUARD_ERRORS_HH
#define COMPNUM_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace compnum
{
    /// Base class for everything this library throws.
    class Error : public std::runtime_error
    {
    public:
        explicit Error(const std::string & message) :
            std::runtime_error(message)
        {
        }
    };

    /// Structurally invalid graph or digraph input (self-loops, unknown ids, duplicates).
    class GraphError : public Error
    {
    public:
        using Error::Error;
    };

    /// An input exceeds a documented size bound.
    class SizeError : public Error
    {
    public:
        using Error::Error;
    };

    /// A precondition on the arguments of an operation does not hold.
    class PreconditionError : public Error
    {
    public:
        using Error::Error;
    };

    /// Malformed file contents.
    class ParseError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
