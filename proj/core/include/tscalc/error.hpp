#ifndef TSCALC_ERROR_HPP
#define TSCALC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsc {

enum class errc {
    empty_scale,
    unordered_segment,
    non_finite_endpoint,
    degenerate_window,
    bad_base,
    point_not_in_scale,
    not_in_kappa,
    numerical_divergence,
    quadrature_failure,
    kind_mismatch,
    out_of_range,
    bounds_violated,
    midpoint_not_in_scale,
    sequence_too_short,
    invalid_config,
    syntax_error,
    unknown_function,
    domain_error,
    spec_error,
};

std::string_view to_string(errc code) noexcept;

/// Every failure raised by the library. `code()` identifies the condition;
/// `what()` carries a human-readable message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// Parse failure; `position()` is the 0-based byte offset into the source.
class syntax_error : public error {
public:
    syntax_error(std::size_t position, const std::string& message)
        : error(errc::syntax_error,
                "at position " + std::to_string(position) + ": " + message)
        , position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace tsc

#endif
