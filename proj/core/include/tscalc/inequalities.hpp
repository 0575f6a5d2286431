#ifndef TSCALC_INEQUALITIES_HPP
#define TSCALC_INEQUALITIES_HPP

#include "tscalc/calculus.hpp"
#include "tscalc/monomials.hpp"
#include "tscalc/timescale.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsc {

/// Where the derivative or value bounds of a report came from.
enum class bounds_source { none, supplied, grid };

std::string_view to_string(bounds_source source) noexcept;

struct report_inputs {
    std::string scale;
    std::string function;
    bounds_source source = bounds_source::none;
    /// Named scalars: gamma, Gamma, M, m1, M1, ..., in insertion order.
    std::vector<std::pair<std::string, double>> params;

    std::optional<double> param(std::string_view name) const;
};

/// Both sides of one inequality (or identity) evaluation.
///
/// slack = rhs - lhs and holds = slack >= -tol_check. A report that could
/// not be computed carries the message in `error`, NaN sides and holds=false.
struct bound_report {
    std::string name;
    std::optional<double> t;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    double tol_check = 0.0;
    report_inputs inputs;
    std::string error;
};

/// 1e-7 * max(1, |lhs|, |rhs|).
double default_check_tolerance(double lhs, double rhs) noexcept;

bound_report make_report(std::string name, std::optional<double> t, double lhs, double rhs,
                         report_inputs inputs);
bound_report make_report(std::string name, std::optional<double> t, double lhs, double rhs,
                         double tol_check, report_inputs inputs);
bound_report failed_report(std::string name, std::optional<double> t, std::string message,
                           report_inputs inputs);

/// Montgomery kernel: s - a for s < t, s - b for t <= s (so p(t,t) = t - b).
/// Throws out_of_range unless a <= s <= b and a <= t <= b.
double montgomery_kernel(double t, double s, double a, double b);

/// Quantities shared by the checks for one (scale, f) pair: the scale, its
/// monomials, and the mean of f^sigma. Build once when running several checks
/// on the same function.
class check_context {
public:
    check_context(time_scale scale, real_function f, quadrature_config cfg = {});

    const time_scale& scale() const noexcept { return scale_; }
    const real_function& f() const noexcept { return f_; }
    const quadrature_config& cfg() const noexcept { return cfg_; }
    double a() const noexcept { return scale_.a(); }
    double b() const noexcept { return scale_.b(); }

    double h2(double t, double s) const { return monomials_(2, t, s); }
    /// (1/(b-a)) * integral of f^sigma over [a, b].
    double mean_f_sigma() const;
    /// Grid estimate of f^Delta's range, computed on first use.
    derivative_range derivative_bounds() const;

    /// Throws bounds_violated when f^Delta leaves [gamma, Gamma] on the grid.
    void validate_derivative_bounds(double gamma, double Gamma) const;

    report_inputs inputs() const;

private:
    time_scale scale_;
    real_function f_;
    quadrature_config cfg_;
    monomial_table monomials_;
    mutable std::optional<double> mean_f_sigma_;
    mutable std::optional<derivative_range> derivative_bounds_;
};

/// f(t) - mean(f^sigma) - (1/(b-a)) * integral_a^b p(t,s) f^Delta(s) Delta s.
double montgomery_residual(const check_context& ctx, double t);
double montgomery_residual(const time_scale& scale, const real_function& f, double t,
                           const quadrature_config& cfg = {});

/// The Montgomery residual as a report: lhs = |residual|, rhs = 0 and
/// tol_check = 1e-7 * (1 + |f(t)|).
bound_report montgomery_check(const check_context& ctx, double t);

struct gruss_bounds {
    double m1, M1, m2, M2;
};

/// Gruss inequality for f^sigma and g^sigma with caller-supplied value
/// bounds, validated on the verification grid (bounds_violated otherwise).
bound_report gruss_check(const time_scale& scale, const real_function& f, const real_function& g,
                         gruss_bounds bounds, const quadrature_config& cfg = {});

/// Ostrowski inequality with M = max(|gamma|, |Gamma|) from the grid.
bound_report ostrowski_check(const check_context& ctx, double t);
bound_report ostrowski_check(const time_scale& scale, const real_function& f, double t,
                             const quadrature_config& cfg = {});

/// Ostrowski-Gruss inequality. Supplied (gamma, Gamma) are validated on the
/// grid; otherwise they come from delta_sup_inf.
bound_report ostrowski_gruss_check(const check_context& ctx, double t,
                                   std::optional<derivative_range> bounds = std::nullopt);
bound_report ostrowski_gruss_check(const time_scale& scale, const real_function& f, double t,
                                   std::optional<derivative_range> bounds = std::nullopt,
                                   const quadrature_config& cfg = {});

/// Left side shared by the Ostrowski-Gruss family:
/// |f(t) - mean(f^sigma) - (f(b)-f(a))/(b-a)^2 * (h2(t,a) - h2(t,b))|.
double ostrowski_gruss_lhs(const check_context& ctx, double t);

/// Classical form on [a, b]: correction term (f(b)-f(a))/(b-a) * (t - (a+b)/2),
/// ordinary quadrature, gamma <= f' <= Gamma validated on the grid.
bound_report corollary_continuous(const real_function& f, double a, double b, double t,
                                  double gamma, double Gamma, const quadrature_config& cfg = {});

/// Sequence form for x_0..x_n at index i in 1..n, with the correction factor
/// (x_n - x_0)/n and gamma, Gamma the extremes of the forward differences.
/// Throws sequence_too_short (fewer than two terms) or out_of_range.
bound_report corollary_discrete(std::span<const double> x, int i, const quadrature_config& cfg = {});

/// Quantum case on {q^m, ..., q^n}. lhs is the general form; the report also
/// carries "lhs_literal", the left side with the correction term written as
/// (f(q^n)-f(q^m))/(q^n-q^m) * (t - (q^(2n+1) - q^(2m+1))/(q+1)).
/// gamma, Gamma bound (f(qt) - f(t)) / ((q-1) t) over t = q^m..q^(n-1).
bound_report corollary_quantum(const real_function& f, double q, int m, int n, double t,
                               const quadrature_config& cfg = {});

/// |f^Delta| <= M validated on the grid; rhs = (b-a) M / 2.
bound_report corollary_bounded(const check_context& ctx, double t, double M);
bound_report corollary_bounded(const time_scale& scale, const real_function& f, double t, double M,
                               const quadrature_config& cfg = {});

/// Ostrowski-Gruss at t = (a+b)/2; throws midpoint_not_in_scale.
bound_report corollary_midpoint(const check_context& ctx);
bound_report corollary_midpoint(const time_scale& scale, const real_function& f,
                                const quadrature_config& cfg = {});

/// Ostrowski-Gruss at t = b.
bound_report corollary_endpoint(const check_context& ctx);
bound_report corollary_endpoint(const time_scale& scale, const real_function& f,
                                const quadrature_config& cfg = {});

} // namespace tsc

#endif
