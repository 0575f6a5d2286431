#include "tscalc/calculus.hpp"

#include "tscalc/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace tsc {

namespace {

double snapped(const time_scale& scale, double t)
{
    if (auto s = scale.snap(t))
        return *s;
    throw error(errc::point_not_in_scale, std::to_string(t) + " is not in " + scale.describe());
}

double largest_power_of_two_at_most(double x)
{
    int exp = 0;
    std::frexp(x, &exp);
    return std::ldexp(1.0, exp - 1);
}

double richardson_derivative(const time_scale& scale, const real_function& f, double t,
                             const quadrature_config& cfg)
{
    const segment seg = scale.segments()[scale.segment_index(t)];
    const double forward_room = seg.hi - t;
    const double backward_room = t - seg.lo;
    const double direction = forward_room >= backward_room ? 1.0 : -1.0;
    const double room = std::max(forward_room, backward_room);

    constexpr int max_rows = 10;
    std::array<std::array<double, max_rows>, max_rows> table{};

    const double ft = f(t);
    double h = largest_power_of_two_at_most(std::min(cfg.fd_step, room));
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_change = std::numeric_limits<double>::infinity();

    for (int i = 0; i < max_rows; ++i, h /= 2) {
        const double step = (t + direction * h) - t;
        table[i][0] = (f(t + step) - ft) / step;
        double factor = 1.0;
        for (int j = 1; j <= i; ++j) {
            factor *= 2.0;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
        }
        if (i == 0)
            continue;
        const double estimate = table[i][i];
        const double change = std::abs(estimate - table[i - 1][i - 1]);
        if (change < best_change) {
            best_change = change;
            best = estimate;
        }
        if (change <= cfg.rel_tol * std::max(1.0, std::abs(estimate)))
            return estimate;
    }
    if (std::isfinite(best) && best_change <= cfg.rel_tol * std::max(1.0, std::abs(best)))
        return best;
    throw error(errc::numerical_divergence,
                "finite-difference extrapolation did not settle at t = " + std::to_string(t));
}

} // namespace

real_function real_function::constant(double c)
{
    return real_function([c](double) { return c; }, std::to_string(c), [](double) { return 0.0; });
}

double delta_derivative(const time_scale& scale, const real_function& f, double t,
                        const quadrature_config& cfg)
{
    const double s = snapped(scale, t);
    if (scale.is_left_scattered_max(s))
        throw error(errc::not_in_kappa, "the left-scattered maximum has no Delta-derivative");
    const double next = scale.sigma(s);
    if (next > s)
        return (f(next) - f(s)) / (next - s);
    if (f.has_derivative())
        return f.derivative(s);
    return richardson_derivative(scale, f, s, cfg);
}

real_function f_sigma(const time_scale& scale, const real_function& f)
{
    return real_function([scale, f](double t) { return f(scale.sigma(t)); },
                         f.label().empty() ? std::string{} : "(" + f.label() + ")^sigma");
}

real_function delta_derivative_function(const time_scale& scale, const real_function& f,
                                        const quadrature_config& cfg)
{
    return real_function([scale, f, cfg](double t) { return delta_derivative(scale, f, t, cfg); },
                         f.label().empty() ? std::string{} : "(" + f.label() + ")^Delta");
}

double delta_integral(const time_scale& scale, const real_function& f, double from, double to,
                      const quadrature_config& cfg)
{
    const double lo = snapped(scale, from);
    const double hi = snapped(scale, to);
    if (lo == hi)
        return 0.0;
    if (lo > hi)
        return -delta_integral(scale, f, hi, lo, cfg);

    const auto segs = scale.segments();
    const std::size_t first = scale.segment_index(lo);
    const std::size_t last = scale.segment_index(hi);

    double sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double dense_lo = i == first ? lo : segs[i].lo;
        const double dense_hi = i == last ? hi : segs[i].hi;
        if (dense_hi > dense_lo)
            sum += integrate(f.eval(), dense_lo, dense_hi, cfg);
        if (i < last) {
            const double t = segs[i].hi;
            sum += (segs[i + 1].lo - t) * f(t);
        }
    }
    return sum;
}

std::vector<double> verification_grid(const time_scale& scale, const quadrature_config& cfg)
{
    std::vector<double> grid;
    for (const segment& seg : scale.segments()) {
        if (seg.is_point()) {
            grid.push_back(seg.lo);
            continue;
        }
        const int n = cfg.dense_samples;
        const double width = seg.hi - seg.lo;
        for (int k = 0; k < n - 1; ++k)
            grid.push_back(seg.lo + width * k / (n - 1));
        grid.push_back(seg.hi);
    }
    return grid;
}

derivative_range delta_sup_inf(const time_scale& scale, const real_function& f,
                               const quadrature_config& cfg)
{
    cfg.validate();
    derivative_range range{std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()};
    for (double t : verification_grid(scale, cfg)) {
        if (scale.is_left_scattered_max(t))
            continue;
        const double d = delta_derivative(scale, f, t, cfg);
        range.gamma = std::min(range.gamma, d);
        range.Gamma = std::max(range.Gamma, d);
    }
    return range;
}

} // namespace tsc
