#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roampath {

enum class Errc {
    invalid_input,
    path_too_short,
    parse,
    domain,
    degenerate_view,
    undefined_correlation,
    degenerate_sample,
    undefined_fit,
    insufficient_sample,
    not_found,
    io,
};

std::string_view to_string(Errc code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying a category.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace roampath
