#include "tscalc/error.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tsc {

void fuzz_config::validate() const
{
    if (trials < 1)
        throw error(errc::invalid_config, "trials must be at least 1");
    if (max_segments < 1)
        throw error(errc::invalid_config, "max_segments must be at least 1");
    if (max_poly_degree < 0)
        throw error(errc::invalid_config, "max_poly_degree must be non-negative");
    if (!(coeff_range >= 0))
        throw error(errc::invalid_config, "coeff_range must be non-negative");
    if (!(span_lo < span_hi))
        throw error(errc::invalid_config, "scale span must be non-empty");
    tolerances.validate();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the conversions below are ours
// so trials replay identically on every platform.
class trial_rng {
public:
    trial_rng(std::uint64_t seed, std::uint64_t index)
        : engine_(splitmix64(seed ^ splitmix64(index)))
    {
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

// Grid of 1/1024 keeps every endpoint exactly representable and short to print.
double quantize(double x)
{
    return std::round(x * 1024.0) / 1024.0;
}

std::vector<std::pair<double, double>> random_segments(trial_rng& rng, const fuzz_config& cfg)
{
    for (;;) {
        const auto count = 1 + rng.below(static_cast<std::uint64_t>(cfg.max_segments));
        std::vector<double> ends(2 * count);
        for (double& e : ends)
            e = quantize(rng.uniform(cfg.span_lo, cfg.span_hi));
        std::sort(ends.begin(), ends.end());

        std::vector<std::pair<double, double>> segs;
        for (std::size_t i = 0; i < count; ++i) {
            const double lo = ends[2 * i];
            const double hi = ends[2 * i + 1];
            const bool point = count > 1 && rng.below(2) == 0;
            segs.emplace_back(lo, point ? lo : hi);
        }
        const time_scale scale = time_scale::make(segs);
        if (scale.a() < scale.b())
            return scale.as_pairs();
    }
}

std::string random_polynomial(trial_rng& rng, const fuzz_config& cfg)
{
    const auto degree = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_poly_degree) + 1));
    std::string text;
    for (int k = 0; k <= degree; ++k) {
        const double c = std::round(rng.uniform(-cfg.coeff_range, cfg.coeff_range) * 256.0) / 256.0;
        if (c == 0.0)
            continue;
        std::string term = to_string(expr::constant(std::abs(c)));
        if (k == 1)
            term += "*t";
        else if (k > 1)
            term += "*t^" + std::to_string(k);
        if (text.empty())
            text = c < 0 ? "-" + term : term;
        else
            text += (c < 0 ? " - " : " + ") + term;
    }
    return text.empty() ? "0" : text;
}

} // namespace

scenario_spec generate_trial(const fuzz_config& cfg, std::uint64_t index)
{
    trial_rng rng(cfg.seed, index);
    scenario_spec spec;
    const auto segs = random_segments(rng, cfg);
    spec.timescale = segments_scale{segs};
    spec.functions = {random_polynomial(rng, cfg)};

    const std::vector<double> candidates = time_scale::make(segs).sample_points();
    spec.points = {candidates[rng.below(candidates.size())]};
    spec.checks = {check_kind::montgomery, check_kind::ostrowski, check_kind::ostrowski_gruss};
    spec.tolerances = cfg.tolerances;
    return spec;
}

fuzz_summary fuzz(const fuzz_config& cfg)
{
    cfg.validate();
    fuzz_summary summary;
    summary.min_slack = std::numeric_limits<double>::infinity();

    for (long long i = 0; i < cfg.trials; ++i) {
        const scenario_spec spec = generate_trial(cfg, static_cast<std::uint64_t>(i));
        const std::vector<bound_report> reports = run_scenario(spec);
        ++summary.trials_run;

        bool errored = false;
        for (const bound_report& r : reports) {
            if (!r.error.empty()) {
                errored = true;
                continue;
            }
            if (!r.holds)
                ++summary.violations;
            if (r.name == "montgomery") {
                const double residual = std::abs(r.inputs.param("residual").value_or(0.0));
                const double scaled = r.tol_check / 1e-7;
                if (residual > summary.residual_max) {
                    summary.residual_max = residual;
                    summary.residual_max_trial = i;
                }
                summary.residual_max_scaled = std::max(summary.residual_max_scaled, residual / scaled);
            } else if (r.slack < summary.min_slack) {
                summary.min_slack = r.slack;
                summary.min_slack_trial = i;
                summary.worst_case = spec;
            }
        }
        if (errored)
            ++summary.errors;
    }
    return summary;
}

nlohmann::ordered_json summary_to_json(const fuzz_config& cfg, const fuzz_summary& summary)
{
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["max_segments"] = cfg.max_segments;
    j["max_poly_degree"] = cfg.max_poly_degree;
    j["coeff_range"] = cfg.coeff_range;
    j["scale_span"] = {cfg.span_lo, cfg.span_hi};
    j["trials_run"] = summary.trials_run;
    j["violations"] = summary.violations;
    j["errors"] = summary.errors;
    j["min_slack"] = summary.min_slack;
    j["min_slack_trial"] = summary.min_slack_trial;
    j["residual_max"] = summary.residual_max;
    j["residual_max_scaled"] = summary.residual_max_scaled;
    j["residual_max_trial"] = summary.residual_max_trial;
    j["worst_case"] = summary.min_slack_trial >= 0 ? scenario_to_json(summary.worst_case)
                                                   : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace tsc
