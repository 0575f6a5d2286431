#ifndef TSCALC_HARNESS_HPP
#define TSCALC_HARNESS_HPP

#include "tscalc/inequalities.hpp"
#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tsc {

// ------------------------------------------------------------------ scenarios

struct segments_scale {
    std::vector<std::pair<double, double>> segments;
};
struct integers_scale {
    long long a;
    long long b;
};
struct qlattice_scale {
    double q;
    int m;
    int n;
};
struct interval_scale {
    double a;
    double b;
};

using scale_spec = std::variant<segments_scale, integers_scale, qlattice_scale, interval_scale>;

time_scale build_scale(const scale_spec& spec);

enum class check_kind { montgomery, gruss, ostrowski, ostrowski_gruss, corollaries };

std::string_view to_string(check_kind kind) noexcept;

/// One scenario file. `points` empty means "all-scale-points": the scattered
/// points plus the endpoints and midpoint of every dense segment.
struct scenario_spec {
    scale_spec timescale;
    std::vector<std::string> functions;
    std::vector<double> points;
    bool all_scale_points = false;
    std::vector<check_kind> checks;
    quadrature_config tolerances;
    /// Partner g for the Gruss check; defaults to f itself.
    std::optional<std::string> gruss_partner;
};

/// Throws error(spec_error) on schema violations, unparsable functions, or
/// points outside the declared scale.
scenario_spec scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const scenario_spec& spec);

/// One report per (function, check, point) in that nesting order. Gruss,
/// midpoint and endpoint reports do not depend on a point and appear once
/// per function. Computation errors become failed reports; only spec
/// errors throw.
std::vector<bound_report> run_scenario(const scenario_spec& spec);

// ---------------------------------------------------------------------- fuzz

struct fuzz_config {
    std::uint64_t seed = 0;
    int trials = 1;
    int max_segments = 6;
    int max_poly_degree = 5;
    double coeff_range = 4.0;
    double span_lo = 0.0;
    double span_hi = 10.0;
    quadrature_config tolerances;

    void validate() const;
};

/// Scenario for trial `index`: a random scale, a random polynomial and one
/// point, with the montgomery, ostrowski and ostrowski_gruss checks. Depends
/// only on (cfg, index).
scenario_spec generate_trial(const fuzz_config& cfg, std::uint64_t index);

struct fuzz_summary {
    long long trials_run = 0;
    long long violations = 0;
    long long errors = 0;
    /// Over ostrowski and ostrowski_gruss reports.
    double min_slack = 0.0;
    long long min_slack_trial = -1;
    scenario_spec worst_case;
    double residual_max = 0.0;
    /// max |residual| / (1 + |f(t)|).
    double residual_max_scaled = 0.0;
    long long residual_max_trial = -1;
};

fuzz_summary fuzz(const fuzz_config& cfg);

nlohmann::ordered_json summary_to_json(const fuzz_config& cfg, const fuzz_summary& summary);

// -------------------------------------------------------------------- reports

enum class report_format { json, csv };

nlohmann::ordered_json report_to_json(const bound_report& r);

/// json: array of report objects; csv: "name,t,lhs,rhs,slack,holds" and one
/// row per report. Numbers carry 17 significant digits.
std::string emit_report(const std::vector<bound_report>& reports, report_format format);

/// Serializes j with floating-point numbers at 17 significant digits and
/// non-finite numbers as null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

} // namespace tsc

#endif
