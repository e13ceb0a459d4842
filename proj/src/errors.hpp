#pragma once

#include <stdexcept>
#include <string>

namespace ratekit {

// Error categories mirrored one-to-one by the C API status codes.
enum class Errc {
    Ok = 0,
    InvalidArgument,
    Bracket,
    NoConvergence,
    Infeasible,
    Unpriceable,
    BadConfig,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace ratekit
