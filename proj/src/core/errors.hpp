#ifndef LGPOLY_ERRORS_HPP
#define LGPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lgp {

enum class ErrorCode {
    pole,
    unsupported_order,
    singularity,
    domain,
    no_root,
    quadrature,
    contour,
    truncation,
    overflow,
    invalid_argument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace lgp

#endif
