#include "tscalc/inequalities.hpp"

#include "tscalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsc {

std::string_view to_string(bounds_source source) noexcept
{
    switch (source) {
    case bounds_source::none: return "none";
    case bounds_source::supplied: return "supplied";
    case bounds_source::grid: return "grid";
    }
    return "none";
}

std::optional<double> report_inputs::param(std::string_view name) const
{
    for (const auto& [key, value] : params)
        if (key == name)
            return value;
    return std::nullopt;
}

double default_check_tolerance(double lhs, double rhs) noexcept
{
    return 1e-7 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

bound_report make_report(std::string name, std::optional<double> t, double lhs, double rhs,
                         double tol_check, report_inputs inputs)
{
    bound_report r;
    r.name = std::move(name);
    r.t = t;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.tol_check = tol_check;
    r.holds = r.slack >= -tol_check;
    r.inputs = std::move(inputs);
    return r;
}

bound_report make_report(std::string name, std::optional<double> t, double lhs, double rhs,
                         report_inputs inputs)
{
    const double tol = default_check_tolerance(lhs, rhs);
    return make_report(std::move(name), t, lhs, rhs, tol, std::move(inputs));
}

bound_report failed_report(std::string name, std::optional<double> t, std::string message,
                           report_inputs inputs)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    bound_report r;
    r.name = std::move(name);
    r.t = t;
    r.lhs = r.rhs = r.slack = r.tol_check = nan;
    r.holds = false;
    r.inputs = std::move(inputs);
    r.error = std::move(message);
    return r;
}

double montgomery_kernel(double t, double s, double a, double b)
{
    if (!(a <= s && s <= b) || !(a <= t && t <= b))
        throw error(errc::out_of_range, "kernel arguments must lie in [a, b]");
    return s < t ? s - a : s - b;
}

namespace {

double bound_tolerance(const quadrature_config& cfg, double bound)
{
    return cfg.rel_tol * std::max(1.0, std::abs(bound));
}

double require_member(const time_scale& scale, double t)
{
    if (auto s = scale.snap(t))
        return *s;
    throw error(errc::point_not_in_scale, std::to_string(t) + " is not in " + scale.describe());
}

} // namespace

// ----------------------------------------------------------- check_context

check_context::check_context(time_scale scale, real_function f, quadrature_config cfg)
    : scale_(std::move(scale))
    , f_(std::move(f))
    , cfg_(cfg)
    , monomials_(scale_, cfg_)
{
    if (!(scale_.a() < scale_.b()))
        throw error(errc::degenerate_window, "inequalities need a scale with a < b");
}

double check_context::mean_f_sigma() const
{
    if (!mean_f_sigma_) {
        const double integral = delta_integral(scale_, f_sigma(scale_, f_), a(), b(), cfg_);
        mean_f_sigma_ = integral / (b() - a());
    }
    return *mean_f_sigma_;
}

derivative_range check_context::derivative_bounds() const
{
    if (!derivative_bounds_)
        derivative_bounds_ = delta_sup_inf(scale_, f_, cfg_);
    return *derivative_bounds_;
}

void check_context::validate_derivative_bounds(double gamma, double Gamma) const
{
    if (gamma > Gamma)
        throw error(errc::bounds_violated, "gamma exceeds Gamma");
    const derivative_range r = derivative_bounds();
    if (r.gamma < gamma - bound_tolerance(cfg_, gamma) || r.Gamma > Gamma + bound_tolerance(cfg_, Gamma))
        throw error(errc::bounds_violated,
                    "f^Delta ranges over [" + std::to_string(r.gamma) + ", " + std::to_string(r.Gamma)
                        + "] on the verification grid");
}

report_inputs check_context::inputs() const
{
    report_inputs in;
    in.scale = scale_.describe();
    in.function = f_.label();
    return in;
}

// ---------------------------------------------------------------- montgomery

double montgomery_residual(const check_context& ctx, double t)
{
    const time_scale& scale = ctx.scale();
    const double s = require_member(scale, t);
    const double a = ctx.a();
    const double b = ctx.b();
    const real_function fd = delta_derivative_function(scale, ctx.f(), ctx.cfg());

    // Split at t so that each piece sees one branch of the kernel.
    const real_function lower([&](double u) { return (u - a) * fd(u); });
    const real_function upper([&](double u) { return (u - b) * fd(u); });
    const double kernel_integral = delta_integral(scale, lower, a, s, ctx.cfg())
                                   + delta_integral(scale, upper, s, b, ctx.cfg());

    return ctx.f()(s) - ctx.mean_f_sigma() - kernel_integral / (b - a);
}

double montgomery_residual(const time_scale& scale, const real_function& f, double t,
                           const quadrature_config& cfg)
{
    return montgomery_residual(check_context(scale, f, cfg), t);
}

bound_report montgomery_check(const check_context& ctx, double t)
{
    const double s = require_member(ctx.scale(), t);
    const double residual = montgomery_residual(ctx, s);
    report_inputs in = ctx.inputs();
    in.params.emplace_back("residual", residual);
    return make_report("montgomery", s, std::abs(residual), 0.0, 1e-7 * (1 + std::abs(ctx.f()(s))),
                       std::move(in));
}

// --------------------------------------------------------------------- gruss

bound_report gruss_check(const time_scale& scale, const real_function& f, const real_function& g,
                         gruss_bounds bounds, const quadrature_config& cfg)
{
    cfg.validate();
    if (!(scale.a() < scale.b()))
        throw error(errc::degenerate_window, "inequalities need a scale with a < b");
    if (bounds.m1 > bounds.M1 || bounds.m2 > bounds.M2)
        throw error(errc::bounds_violated, "lower bound exceeds upper bound");

    const real_function fs = f_sigma(scale, f);
    const real_function gs = f_sigma(scale, g);

    for (double s : verification_grid(scale, cfg)) {
        if (s == scale.b())
            continue;
        const double fv = fs(s);
        const double gv = gs(s);
        if (fv < bounds.m1 - bound_tolerance(cfg, bounds.m1)
            || fv > bounds.M1 + bound_tolerance(cfg, bounds.M1))
            throw error(errc::bounds_violated,
                        "f^sigma(" + std::to_string(s) + ") = " + std::to_string(fv)
                            + " is outside [m1, M1]");
        if (gv < bounds.m2 - bound_tolerance(cfg, bounds.m2)
            || gv > bounds.M2 + bound_tolerance(cfg, bounds.M2))
            throw error(errc::bounds_violated,
                        "g^sigma(" + std::to_string(s) + ") = " + std::to_string(gv)
                            + " is outside [m2, M2]");
    }

    const double length = scale.b() - scale.a();
    const real_function product([&](double s) { return fs(s) * gs(s); });
    const double mean_fg = delta_integral(scale, product, scale.a(), scale.b(), cfg) / length;
    const double mean_f = delta_integral(scale, fs, scale.a(), scale.b(), cfg) / length;
    const double mean_g = delta_integral(scale, gs, scale.a(), scale.b(), cfg) / length;

    report_inputs in;
    in.scale = scale.describe();
    in.function = f.label() + " ; " + g.label();
    in.source = bounds_source::supplied;
    in.params = {{"m1", bounds.m1}, {"M1", bounds.M1}, {"m2", bounds.m2}, {"M2", bounds.M2}};

    const double lhs = std::abs(mean_fg - mean_f * mean_g);
    const double rhs = (bounds.M1 - bounds.m1) * (bounds.M2 - bounds.m2) / 4;
    return make_report("gruss", std::nullopt, lhs, rhs, std::move(in));
}

// ----------------------------------------------------------------- ostrowski

bound_report ostrowski_check(const check_context& ctx, double t)
{
    const double s = require_member(ctx.scale(), t);
    const derivative_range r = ctx.derivative_bounds();
    const double M = std::max(std::abs(r.gamma), std::abs(r.Gamma));
    const double h_a = ctx.h2(s, ctx.a());
    const double h_b = ctx.h2(s, ctx.b());

    report_inputs in = ctx.inputs();
    in.source = bounds_source::grid;
    in.params = {{"M", M}, {"h2_t_a", h_a}, {"h2_t_b", h_b}};

    const double lhs = std::abs(ctx.f()(s) - ctx.mean_f_sigma());
    const double rhs = M / (ctx.b() - ctx.a()) * (h_a + h_b);
    return make_report("ostrowski", s, lhs, rhs, std::move(in));
}

bound_report ostrowski_check(const time_scale& scale, const real_function& f, double t,
                             const quadrature_config& cfg)
{
    return ostrowski_check(check_context(scale, f, cfg), t);
}

// ---------------------------------------------------------- ostrowski-gruss

double ostrowski_gruss_lhs(const check_context& ctx, double t)
{
    const double s = require_member(ctx.scale(), t);
    const double a = ctx.a();
    const double b = ctx.b();
    const real_function& f = ctx.f();
    const double slope = (f(b) - f(a)) / ((b - a) * (b - a));
    return std::abs(f(s) - ctx.mean_f_sigma() - slope * (ctx.h2(s, a) - ctx.h2(s, b)));
}

bound_report ostrowski_gruss_check(const check_context& ctx, double t,
                                   std::optional<derivative_range> bounds)
{
    const double s = require_member(ctx.scale(), t);
    report_inputs in = ctx.inputs();
    derivative_range r{};
    if (bounds) {
        ctx.validate_derivative_bounds(bounds->gamma, bounds->Gamma);
        r = *bounds;
        in.source = bounds_source::supplied;
    } else {
        r = ctx.derivative_bounds();
        in.source = bounds_source::grid;
    }
    in.params = {{"gamma", r.gamma}, {"Gamma", r.Gamma}};

    const double lhs = ostrowski_gruss_lhs(ctx, s);
    const double rhs = (ctx.b() - ctx.a()) * (r.Gamma - r.gamma) / 4;
    return make_report("ostrowski_gruss", s, lhs, rhs, std::move(in));
}

bound_report ostrowski_gruss_check(const time_scale& scale, const real_function& f, double t,
                                   std::optional<derivative_range> bounds,
                                   const quadrature_config& cfg)
{
    return ostrowski_gruss_check(check_context(scale, f, cfg), t, bounds);
}

// --------------------------------------------------------------- corollaries

bound_report corollary_continuous(const real_function& f, double a, double b, double t,
                                  double gamma, double Gamma, const quadrature_config& cfg)
{
    cfg.validate();
    if (!(a < b))
        throw error(errc::degenerate_window, "need a < b");
    if (!(a <= t && t <= b))
        throw error(errc::out_of_range, "t must lie in [a, b]");
    if (gamma > Gamma)
        throw error(errc::bounds_violated, "gamma exceeds Gamma");

    const time_scale interval = time_scale::real_interval(a, b);
    for (double s : verification_grid(interval, cfg)) {
        const double d = delta_derivative(interval, f, s, cfg);
        if (d < gamma - bound_tolerance(cfg, gamma) || d > Gamma + bound_tolerance(cfg, Gamma))
            throw error(errc::bounds_violated,
                        "f'(" + std::to_string(s) + ") = " + std::to_string(d)
                            + " is outside [gamma, Gamma]");
    }

    const double length = b - a;
    const double mean = integrate(f.eval(), a, b, cfg) / length;
    const double lhs =
        std::abs(f(t) - mean - (f(b) - f(a)) / length * (t - (a + b) / 2));
    const double rhs = length * (Gamma - gamma) / 4;

    report_inputs in;
    in.scale = interval.describe();
    in.function = f.label();
    in.source = bounds_source::supplied;
    in.params = {{"gamma", gamma}, {"Gamma", Gamma}};
    return make_report("corollary_continuous", t, lhs, rhs, std::move(in));
}

bound_report corollary_discrete(std::span<const double> x, int i, const quadrature_config&)
{
    if (x.size() < 2)
        throw error(errc::sequence_too_short, "need x_0..x_n with n >= 1");
    const int n = static_cast<int>(x.size()) - 1;
    if (i < 1 || i > n)
        throw error(errc::out_of_range, "index must satisfy 1 <= i <= n");

    double sum = 0.0;
    for (int j = 1; j <= n; ++j)
        sum += x[j];
    const double mean = sum / n;

    double gamma = std::numeric_limits<double>::infinity();
    double Gamma = -gamma;
    for (int j = 0; j < n; ++j) {
        const double d = x[j + 1] - x[j];
        gamma = std::min(gamma, d);
        Gamma = std::max(Gamma, d);
    }

    const double centre = i - (n + 1) / 2.0;
    const double lhs = std::abs(x[i] - mean - (x[n] - x[0]) / n * centre);
    // As printed, the correction factor reads x_n / n; it agrees only when x_0 = 0.
    const double lhs_literal = std::abs(x[i] - mean - x[n] / n * centre);
    const double rhs = n * (Gamma - gamma) / 4;

    report_inputs in;
    in.scale = "{0,...," + std::to_string(n) + "}";
    in.function = "sequence of " + std::to_string(x.size()) + " terms";
    in.source = bounds_source::grid;
    in.params = {{"gamma", gamma}, {"Gamma", Gamma}, {"lhs_literal", lhs_literal}};
    return make_report("corollary_discrete", static_cast<double>(i), lhs, rhs, std::move(in));
}

bound_report corollary_quantum(const real_function& f, double q, int m, int n, double t,
                               const quadrature_config& cfg)
{
    const time_scale lattice = time_scale::q_lattice(q, m, n);
    const double s = require_member(lattice, t);
    const check_context ctx(lattice, f, cfg);

    double gamma = std::numeric_limits<double>::infinity();
    double Gamma = -gamma;
    for (std::size_t k = 0; k + 1 < lattice.segments().size(); ++k) {
        const double tk = lattice.segments()[k].lo;
        const double quotient = (f(q * tk) - f(tk)) / ((q - 1) * tk);
        gamma = std::min(gamma, quotient);
        Gamma = std::max(Gamma, quotient);
    }

    const double a = lattice.a();
    const double b = lattice.b();
    const double lhs = ostrowski_gruss_lhs(ctx, s);
    const double shift = (std::pow(q, 2 * n + 1) - std::pow(q, 2 * m + 1)) / (q + 1);
    const double lhs_literal =
        std::abs(f(s) - ctx.mean_f_sigma() - (f(b) - f(a)) / (b - a) * (s - shift));
    const double rhs = (b - a) * (Gamma - gamma) / 4;

    report_inputs in = ctx.inputs();
    in.source = bounds_source::grid;
    in.params = {{"q", q},
                 {"gamma", gamma},
                 {"Gamma", Gamma},
                 {"lhs_general", lhs},
                 {"lhs_literal", lhs_literal},
                 {"literal_minus_general", lhs_literal - lhs}};
    return make_report("corollary_quantum", s, lhs, rhs, std::move(in));
}

bound_report corollary_bounded(const check_context& ctx, double t, double M)
{
    const double s = require_member(ctx.scale(), t);
    if (!(M >= 0))
        throw error(errc::bounds_violated, "M must be non-negative");
    const derivative_range r = ctx.derivative_bounds();
    const double tol = bound_tolerance(ctx.cfg(), M);
    if (std::abs(r.gamma) > M + tol || std::abs(r.Gamma) > M + tol)
        throw error(errc::bounds_violated, "|f^Delta| exceeds M on the verification grid");

    report_inputs in = ctx.inputs();
    in.source = bounds_source::supplied;
    in.params = {{"M", M}};
    const double lhs = ostrowski_gruss_lhs(ctx, s);
    const double rhs = (ctx.b() - ctx.a()) * M / 2;
    return make_report("corollary_bounded", s, lhs, rhs, std::move(in));
}

bound_report corollary_bounded(const time_scale& scale, const real_function& f, double t, double M,
                               const quadrature_config& cfg)
{
    return corollary_bounded(check_context(scale, f, cfg), t, M);
}

bound_report corollary_midpoint(const check_context& ctx)
{
    const double mid = (ctx.a() + ctx.b()) / 2;
    if (!ctx.scale().contains(mid))
        throw error(errc::midpoint_not_in_scale,
                    "(a+b)/2 = " + std::to_string(mid) + " is not in " + ctx.scale().describe());
    bound_report r = ostrowski_gruss_check(ctx, mid);
    r.name = "corollary_midpoint";
    return r;
}

bound_report corollary_midpoint(const time_scale& scale, const real_function& f,
                                const quadrature_config& cfg)
{
    return corollary_midpoint(check_context(scale, f, cfg));
}

bound_report corollary_endpoint(const check_context& ctx)
{
    bound_report r = ostrowski_gruss_check(ctx, ctx.b());
    r.name = "corollary_endpoint";
    return r;
}

bound_report corollary_endpoint(const time_scale& scale, const real_function& f,
                                const quadrature_config& cfg)
{
    return corollary_endpoint(check_context(scale, f, cfg));
}

} // namespace tsc
