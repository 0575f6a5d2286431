#include "tscalc/error.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tsc {

using nlohmann::json;
using nlohmann::ordered_json;

time_scale build_scale(const scale_spec& spec)
{
    struct visitor {
        time_scale operator()(const segments_scale& s) const { return time_scale::make(s.segments); }
        time_scale operator()(const integers_scale& s) const
        {
            return time_scale::integers_window(s.a, s.b);
        }
        time_scale operator()(const qlattice_scale& s) const
        {
            return time_scale::q_lattice(s.q, s.m, s.n);
        }
        time_scale operator()(const interval_scale& s) const
        {
            return time_scale::real_interval(s.a, s.b);
        }
    };
    return std::visit(visitor{}, spec);
}

std::string_view to_string(check_kind kind) noexcept
{
    switch (kind) {
    case check_kind::montgomery: return "montgomery";
    case check_kind::gruss: return "gruss";
    case check_kind::ostrowski: return "ostrowski";
    case check_kind::ostrowski_gruss: return "ostrowski_gruss";
    case check_kind::corollaries: return "corollaries";
    }
    return "?";
}

namespace {

[[noreturn]] void spec_fail(const std::string& message)
{
    throw error(errc::spec_error, message);
}

const json& field(const json& obj, const char* key)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        spec_fail(std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const char* what)
{
    if (!j.is_number())
        spec_fail(std::string(what) + " must be a number");
    return j.get<double>();
}

long long integer(const json& j, const char* what)
{
    if (!j.is_number_integer())
        spec_fail(std::string(what) + " must be an integer");
    return j.get<long long>();
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where)
{
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
            spec_fail(std::string("unknown field '") + key + "' in " + where);
    }
}

scale_spec scale_from_json(const json& j)
{
    if (!j.is_object() || j.size() != 1)
        spec_fail("timescale must be an object with exactly one of segments, integers, qlattice, interval");
    const auto& [kind, body] = *j.items().begin();
    if (kind == "segments") {
        if (!body.is_array() || body.empty())
            spec_fail("segments must be a non-empty array of [lo, hi] pairs");
        segments_scale s;
        for (const json& seg : body) {
            if (!seg.is_array() || seg.size() != 2)
                spec_fail("each segment must be a [lo, hi] pair");
            s.segments.emplace_back(number(seg[0], "segment lo"), number(seg[1], "segment hi"));
        }
        return s;
    }
    if (kind == "integers") {
        only_keys(body, {"a", "b"}, "integers");
        return integers_scale{integer(field(body, "a"), "a"), integer(field(body, "b"), "b")};
    }
    if (kind == "qlattice") {
        only_keys(body, {"q", "m", "n"}, "qlattice");
        return qlattice_scale{number(field(body, "q"), "q"),
                              static_cast<int>(integer(field(body, "m"), "m")),
                              static_cast<int>(integer(field(body, "n"), "n"))};
    }
    if (kind == "interval") {
        only_keys(body, {"a", "b"}, "interval");
        return interval_scale{number(field(body, "a"), "a"), number(field(body, "b"), "b")};
    }
    spec_fail("unknown timescale kind '" + kind + "'");
}

check_kind check_from_string(const std::string& name)
{
    for (check_kind k : {check_kind::montgomery, check_kind::gruss, check_kind::ostrowski,
                         check_kind::ostrowski_gruss, check_kind::corollaries})
        if (to_string(k) == name)
            return k;
    spec_fail("unknown check '" + name + "'");
}

quadrature_config tolerances_from_json(const json& j)
{
    if (!j.is_object())
        spec_fail("tolerances must be an object");
    only_keys(j, {"abs_tol", "rel_tol", "max_depth", "fd_step", "dense_samples"}, "tolerances");
    quadrature_config cfg;
    if (j.contains("abs_tol")) cfg.abs_tol = number(j["abs_tol"], "abs_tol");
    if (j.contains("rel_tol")) cfg.rel_tol = number(j["rel_tol"], "rel_tol");
    if (j.contains("max_depth")) cfg.max_depth = static_cast<int>(integer(j["max_depth"], "max_depth"));
    if (j.contains("fd_step")) cfg.fd_step = number(j["fd_step"], "fd_step");
    if (j.contains("dense_samples"))
        cfg.dense_samples = static_cast<int>(integer(j["dense_samples"], "dense_samples"));
    return cfg;
}

} // namespace

namespace {
void check_semantics(const scenario_spec& spec);
} // namespace

scenario_spec scenario_from_json(const json& j)
{
    if (!j.is_object())
        spec_fail("scenario must be a JSON object");
    only_keys(j, {"timescale", "functions", "points", "checks", "tolerances", "gruss_partner"},
              "scenario");

    scenario_spec spec;
    spec.timescale = scale_from_json(field(j, "timescale"));

    const json& functions = field(j, "functions");
    if (!functions.is_array() || functions.empty())
        spec_fail("functions must be a non-empty array of expression strings");
    for (const json& f : functions) {
        if (!f.is_string())
            spec_fail("functions must be strings");
        spec.functions.push_back(f.get<std::string>());
    }

    const json& points = field(j, "points");
    if (points.is_string()) {
        if (points.get<std::string>() != "all-scale-points")
            spec_fail("points must be an array of numbers or \"all-scale-points\"");
        spec.all_scale_points = true;
    } else if (points.is_array() && !points.empty()) {
        for (const json& p : points)
            spec.points.push_back(number(p, "point"));
    } else {
        spec_fail("points must be a non-empty array of numbers or \"all-scale-points\"");
    }

    const json& checks = field(j, "checks");
    if (!checks.is_array() || checks.empty())
        spec_fail("checks must be a non-empty array");
    for (const json& c : checks) {
        if (!c.is_string())
            spec_fail("checks must be strings");
        spec.checks.push_back(check_from_string(c.get<std::string>()));
    }

    if (j.contains("tolerances"))
        spec.tolerances = tolerances_from_json(j["tolerances"]);
    if (j.contains("gruss_partner")) {
        if (!j["gruss_partner"].is_string())
            spec_fail("gruss_partner must be an expression string");
        spec.gruss_partner = j["gruss_partner"].get<std::string>();
    }
    check_semantics(spec);
    return spec;
}

ordered_json scenario_to_json(const scenario_spec& spec)
{
    ordered_json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, segments_scale>) {
                ordered_json segs = ordered_json::array();
                for (const auto& [lo, hi] : s.segments)
                    segs.push_back({lo, hi});
                j["timescale"] = {{"segments", segs}};
            } else if constexpr (std::is_same_v<T, integers_scale>) {
                j["timescale"] = {{"integers", {{"a", s.a}, {"b", s.b}}}};
            } else if constexpr (std::is_same_v<T, qlattice_scale>) {
                j["timescale"] = {{"qlattice", {{"q", s.q}, {"m", s.m}, {"n", s.n}}}};
            } else {
                j["timescale"] = {{"interval", {{"a", s.a}, {"b", s.b}}}};
            }
        },
        spec.timescale);
    j["functions"] = spec.functions;
    if (spec.all_scale_points)
        j["points"] = "all-scale-points";
    else
        j["points"] = spec.points;
    ordered_json checks = ordered_json::array();
    for (check_kind c : spec.checks)
        checks.push_back(std::string(to_string(c)));
    j["checks"] = checks;
    const quadrature_config& cfg = spec.tolerances;
    j["tolerances"] = {{"abs_tol", cfg.abs_tol},
                       {"rel_tol", cfg.rel_tol},
                       {"max_depth", cfg.max_depth},
                       {"fd_step", cfg.fd_step},
                       {"dense_samples", cfg.dense_samples}};
    if (spec.gruss_partner)
        j["gruss_partner"] = *spec.gruss_partner;
    return j;
}

// -------------------------------------------------------------------- runner

namespace {

template <class Fn>
void attempt(std::vector<bound_report>& out, const char* name, std::optional<double> t,
             const report_inputs& inputs, Fn&& fn)
{
    try {
        out.push_back(fn());
    } catch (const error& e) {
        out.push_back(failed_report(name, t, e.what(), inputs));
    }
}

void run_corollaries(std::vector<bound_report>& out, const scenario_spec& spec,
                     const check_context& ctx, const std::vector<double>& points)
{
    const report_inputs base = ctx.inputs();
    const real_function& f = ctx.f();

    for (double t : points) {
        attempt(out, "corollary_bounded", t, base, [&] {
            const derivative_range r = ctx.derivative_bounds();
            return corollary_bounded(ctx, t, std::max(std::abs(r.gamma), std::abs(r.Gamma)));
        });
    }

    if (const auto* iv = std::get_if<interval_scale>(&spec.timescale)) {
        for (double t : points) {
            attempt(out, "corollary_continuous", t, base, [&] {
                const derivative_range r = ctx.derivative_bounds();
                return corollary_continuous(f, iv->a, iv->b, t, r.gamma, r.Gamma, ctx.cfg());
            });
        }
    } else if (const auto* zs = std::get_if<integers_scale>(&spec.timescale)) {
        std::vector<double> x;
        for (long long k = zs->a; k <= zs->b; ++k)
            x.push_back(f(static_cast<double>(k)));
        for (double t : points) {
            const long long i = std::llround(t) - zs->a;
            if (i < 1)
                continue;
            attempt(out, "corollary_discrete", t, base, [&] {
                bound_report r = corollary_discrete(x, static_cast<int>(i), ctx.cfg());
                r.t = t;
                r.inputs.scale = base.scale;
                r.inputs.function = base.function;
                return r;
            });
        }
    } else if (const auto* qs = std::get_if<qlattice_scale>(&spec.timescale)) {
        for (double t : points) {
            attempt(out, "corollary_quantum", t, base,
                    [&] { return corollary_quantum(f, qs->q, qs->m, qs->n, t, ctx.cfg()); });
        }
    }

    if (ctx.scale().contains((ctx.a() + ctx.b()) / 2))
        attempt(out, "corollary_midpoint", std::nullopt, base, [&] { return corollary_midpoint(ctx); });
    attempt(out, "corollary_endpoint", ctx.b(), base, [&] { return corollary_endpoint(ctx); });
}

bound_report gruss_with_grid_bounds(const check_context& ctx, const real_function& g)
{
    const time_scale& scale = ctx.scale();
    const real_function fs = f_sigma(scale, ctx.f());
    const real_function gs = f_sigma(scale, g);
    gruss_bounds bounds{INFINITY, -INFINITY, INFINITY, -INFINITY};
    for (double s : verification_grid(scale, ctx.cfg())) {
        if (s == scale.b())
            continue;
        const double fv = fs(s);
        const double gv = gs(s);
        bounds.m1 = std::min(bounds.m1, fv);
        bounds.M1 = std::max(bounds.M1, fv);
        bounds.m2 = std::min(bounds.m2, gv);
        bounds.M2 = std::max(bounds.M2, gv);
    }
    bound_report r = gruss_check(scale, ctx.f(), g, bounds, ctx.cfg());
    r.inputs.source = bounds_source::grid;
    return r;
}

} // namespace

namespace {

struct prepared {
    time_scale scale;
    std::vector<double> points;
    std::vector<expr> parsed;
    std::optional<expr> partner;
};

// Semantic checks shared by scenario_from_json and run_scenario.
prepared prepare(const scenario_spec& spec)
{
    if (spec.functions.empty())
        spec_fail("at least one function is required");
    if (spec.checks.empty())
        spec_fail("at least one check is required");
    try {
        spec.tolerances.validate();
    } catch (const error& e) {
        spec_fail(e.what());
    }

    std::optional<time_scale> built;
    try {
        built = build_scale(spec.timescale);
    } catch (const error& e) {
        spec_fail(std::string("invalid timescale: ") + e.what());
    }
    const time_scale& scale = *built;
    if (!(scale.a() < scale.b()))
        spec_fail("the timescale needs a < b");

    std::vector<double> points;
    if (spec.all_scale_points) {
        points = scale.sample_points();
    } else {
        for (double p : spec.points) {
            const auto s = scale.snap(p);
            if (!s)
                spec_fail("point " + std::to_string(p) + " is not in " + scale.describe());
            points.push_back(*s);
        }
    }

    std::vector<expr> parsed;
    for (const std::string& text : spec.functions) {
        try {
            parsed.push_back(parse(text));
        } catch (const error& e) {
            spec_fail("function '" + text + "': " + e.what());
        }
    }
    std::optional<expr> partner;
    if (spec.gruss_partner) {
        try {
            partner = parse(*spec.gruss_partner);
        } catch (const error& e) {
            spec_fail("gruss_partner '" + *spec.gruss_partner + "': " + e.what());
        }
    }

    return {scale, std::move(points), std::move(parsed), std::move(partner)};
}

void check_semantics(const scenario_spec& spec)
{
    prepare(spec);
}

} // namespace

std::vector<bound_report> run_scenario(const scenario_spec& spec)
{
    const prepared prep = prepare(spec);
    const time_scale& scale = prep.scale;
    const std::vector<double>& points = prep.points;
    const std::vector<expr>& parsed = prep.parsed;
    const std::optional<expr>& partner = prep.partner;

    std::vector<bound_report> out;
    for (const expr& e : parsed) {
        const check_context ctx(scale, to_real_function(e), spec.tolerances);
        const report_inputs base = ctx.inputs();
        for (check_kind check : spec.checks) {
            switch (check) {
            case check_kind::montgomery:
                for (double t : points)
                    attempt(out, "montgomery", t, base, [&] { return montgomery_check(ctx, t); });
                break;
            case check_kind::ostrowski:
                for (double t : points)
                    attempt(out, "ostrowski", t, base, [&] { return ostrowski_check(ctx, t); });
                break;
            case check_kind::ostrowski_gruss:
                for (double t : points)
                    attempt(out, "ostrowski_gruss", t, base,
                            [&] { return ostrowski_gruss_check(ctx, t); });
                break;
            case check_kind::gruss:
                attempt(out, "gruss", std::nullopt, base, [&] {
                    return gruss_with_grid_bounds(ctx, partner ? to_real_function(*partner) : ctx.f());
                });
                break;
            case check_kind::corollaries:
                run_corollaries(out, spec, ctx, points);
                break;
            }
        }
    }
    return out;
}

} // namespace tsc
