#include <pmx/error.hpp>

namespace pmx {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::format: return "format error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::input: return "input error";
    case ErrorKind::divisibility: return "divisibility error";
    case ErrorKind::precondition: return "precondition error";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::budget: return "budget exhausted";
    case ErrorKind::cache: return "cache error";
    case ErrorKind::io: return "I/O error";
    }
    return "error";
}

void fail(ErrorKind kind, const std::string & message)
{
    throw Error(kind, message);
}

} // namespace pmx
