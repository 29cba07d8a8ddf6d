#pragma once

#include <stdexcept>
#include <string>

namespace sierp {

enum class errc {
    degenerate_input,
    singular_mod3,
    singular_matrix,
    non_integral_conjugate,
    duplicate_digits,
    collinear_digits,
    non_expanding,
    wrong_branch,
    overflow,
    syntax,
    depth_cap,
};

inline const char* to_string(errc e) {
    switch (e) {
        case errc::degenerate_input: return "degenerate input";
        case errc::singular_mod3: return "matrix is singular mod 3";
        case errc::singular_matrix: return "matrix is singular";
        case errc::non_integral_conjugate: return "conjugate is not integral";
        case errc::duplicate_digits: return "duplicate digits";
        case errc::collinear_digits: return "digits are collinear";
        case errc::non_expanding: return "matrix is not expanding";
        case errc::wrong_branch: return "wrong branch";
        case errc::overflow: return "integer overflow";
        case errc::syntax: return "syntax error";
        case errc::depth_cap: return "depth exceeds cap";
    }
    return "unknown error";
}

/// Every precondition failure in the library is reported through this type.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    explicit error(errc code) : error(code, to_string(code)) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace sierp
