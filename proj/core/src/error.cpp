#include "roampath/error.hpp"

namespace roampath {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_input: return "invalid input";
        case Errc::path_too_short: return "path too short";
        case Errc::parse: return "parse error";
        case Errc::domain: return "domain error";
        case Errc::degenerate_view: return "degenerate view";
        case Errc::undefined_correlation: return "undefined correlation";
        case Errc::degenerate_sample: return "degenerate sample";
        case Errc::undefined_fit: return "undefined fit";
        case Errc::insufficient_sample: return "insufficient sample";
        case Errc::not_found: return "file not found";
        case Errc::io: return "i/o error";
    }
    return "unknown error";
}

}  // namespace roampath
