#ifndef TSCALC_CALCULUS_HPP
#define TSCALC_CALCULUS_HPP

#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tsc {

/// A real function on the hull [a, b] of a time scale.
///
/// The optional derivative is the classical derivative of the same function;
/// when present it is used at right-dense points instead of finite
/// differences.
class real_function {
public:
    using fn = std::function<double(double)>;

    real_function() = default;
    real_function(fn eval, std::string label = {}, fn derivative = {})
        : eval_(std::move(eval))
        , derivative_(std::move(derivative))
        , label_(std::move(label))
    {
    }

    static real_function constant(double c);

    double operator()(double t) const { return eval_(t); }
    bool has_derivative() const noexcept { return static_cast<bool>(derivative_); }
    double derivative(double t) const { return derivative_(t); }
    const std::string& label() const noexcept { return label_; }
    const fn& eval() const noexcept { return eval_; }

private:
    fn eval_;
    fn derivative_;
    std::string label_;
};

/// Delta-derivative of f at t.
///
/// At a right-scattered point this is (f(sigma(t)) - f(t)) / mu(t). At a
/// right-dense point it is the classical derivative, taken from f when f
/// carries one and otherwise from Richardson-extrapolated one-sided
/// differences stepping into the larger side of the containing segment.
///
/// Throws point_not_in_scale, not_in_kappa (t is a left-scattered maximum)
/// or numerical_divergence.
double delta_derivative(const time_scale& scale, const real_function& f, double t,
                        const quadrature_config& cfg = {});

/// t -> f(sigma(t)).
real_function f_sigma(const time_scale& scale, const real_function& f);

/// t -> f^Delta(t), evaluated lazily with delta_derivative.
real_function delta_derivative_function(const time_scale& scale, const real_function& f,
                                        const quadrature_config& cfg = {});

/// Oriented Delta-integral of f from `from` to `to`.
///
/// Right-scattered points t in [from, to) contribute mu(t) f(t); dense parts
/// are integrated with `integrate`. Reversed bounds negate the result.
double delta_integral(const time_scale& scale, const real_function& f, double from, double to,
                      const quadrature_config& cfg = {});

/// Every scattered point plus cfg.dense_samples evenly spaced points per dense
/// segment, ascending. Used to estimate bounds and to validate caller bounds.
std::vector<double> verification_grid(const time_scale& scale, const quadrature_config& cfg);

struct derivative_range {
    double gamma;
    double Gamma;
};

/// Minimum and maximum of f^Delta over the verification grid, restricted to
/// the kappa-set. A grid estimate, not a certified enclosure.
derivative_range delta_sup_inf(const time_scale& scale, const real_function& f,
                               const quadrature_config& cfg = {});

} // namespace tsc

#endif
