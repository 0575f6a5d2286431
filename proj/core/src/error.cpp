#include "tscalc/error.hpp"

namespace tsc {

std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::empty_scale: return "EmptyScale";
    case errc::unordered_segment: return "UnorderedSegment";
    case errc::non_finite_endpoint: return "NonFiniteEndpoint";
    case errc::degenerate_window: return "DegenerateWindow";
    case errc::bad_base: return "BadBase";
    case errc::point_not_in_scale: return "PointNotInScale";
    case errc::not_in_kappa: return "NotInKappa";
    case errc::numerical_divergence: return "NumericalDivergence";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::kind_mismatch: return "KindMismatch";
    case errc::out_of_range: return "OutOfRange";
    case errc::bounds_violated: return "BoundsViolated";
    case errc::midpoint_not_in_scale: return "MidpointNotInScale";
    case errc::sequence_too_short: return "SequenceTooShort";
    case errc::invalid_config: return "InvalidConfig";
    case errc::syntax_error: return "SyntaxError";
    case errc::unknown_function: return "UnknownFunction";
    case errc::domain_error: return "DomainError";
    case errc::spec_error: return "SpecError";
    }
    return "Unknown";
}

} // namespace tsc
