#include "tscalc/monomials.hpp"

#include "tscalc/error.hpp"

#include <cmath>
#include <string>

namespace tsc {

monomial_table::monomial_table(time_scale scale, quadrature_config cfg)
    : scale_(std::move(scale))
    , cfg_(cfg)
{
    cfg_.validate();
}

double monomial_table::operator()(int k, double t, double s) const
{
    if (k < 0)
        throw error(errc::out_of_range, "monomial order must be non-negative");
    const auto ts = scale_.snap(t);
    const auto ss = scale_.snap(s);
    if (!ts || !ss)
        throw error(errc::point_not_in_scale,
                    "monomial arguments must belong to " + scale_.describe());
    return eval(k, *ts, *ss);
}

// Integral of h_{k-1}(., s) over [from, to] inside one dense segment.
double monomial_table::integrate_lower(int k, double from, double to, double s) const
{
    if (from == to)
        return 0.0;
    if (k == 1)
        return to - from;
    return integrate([this, k, s](double tau) { return eval(k - 1, tau, s); }, from, to, cfg_);
}

double monomial_table::eval(int k, double t, double s) const
{
    if (k == 0)
        return 1.0;
    if (t == s)
        return 0.0;

    const std::size_t j = scale_.segment_index(t);
    const segment seg = scale_.segments()[j];
    if (scale_.segment_index(s) == j) {
        return t > s ? integrate_lower(k, s, t, s) : -integrate_lower(k, t, s, s);
    }

    const anchors& a = table(k, s);
    if (t == seg.lo)
        return a.at_lo[j];
    if (t == seg.hi)
        return a.at_hi[j];
    return a.at_lo[j] + integrate_lower(k, seg.lo, t, s);
}

const monomial_table::anchors& monomial_table::table(int k, double s) const
{
    const auto key = std::make_pair(k, s);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    // Built outside the lock: building recurses into lower orders.
    anchors built = build(k, s);
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(key, std::move(built)).first->second;
}

monomial_table::anchors monomial_table::build(int k, double s) const
{
    const auto segs = scale_.segments();
    const std::size_t n = segs.size();
    const std::size_t home = scale_.segment_index(s);

    anchors a;
    a.at_lo.resize(n);
    a.at_hi.resize(n);
    a.at_lo[home] = -integrate_lower(k, segs[home].lo, s, s);
    a.at_hi[home] = integrate_lower(k, s, segs[home].hi, s);

    for (std::size_t j = home + 1; j < n; ++j) {
        const double prev_hi = segs[j - 1].hi;
        a.at_lo[j] = a.at_hi[j - 1] + (segs[j].lo - prev_hi) * eval(k - 1, prev_hi, s);
        a.at_hi[j] = a.at_lo[j] + integrate_lower(k, segs[j].lo, segs[j].hi, s);
    }
    for (std::size_t j = home; j-- > 0;) {
        const double hi = segs[j].hi;
        a.at_hi[j] = a.at_lo[j + 1] - (segs[j + 1].lo - hi) * eval(k - 1, hi, s);
        a.at_lo[j] = a.at_hi[j] - integrate_lower(k, segs[j].lo, hi, s);
    }
    return a;
}

double monomial_h(const time_scale& scale, int k, double t, double s, const quadrature_config& cfg)
{
    return monomial_table(scale, cfg)(k, t, s);
}

namespace {

bool is_integer(double x)
{
    return std::isfinite(x) && x == std::floor(x);
}

bool is_power_of(double q, double s)
{
    if (!(s > 0))
        return false;
    const double k = std::round(std::log(s) / std::log(q));
    return std::abs(std::pow(q, k) - s) <= membership_tolerance(s) * 1e3;
}

} // namespace

double h2_closed_form(scale_kind kind, double t, double s, std::optional<double> q)
{
    switch (kind) {
    case scale_kind::continuous:
        if (q)
            throw error(errc::kind_mismatch, "a base q only applies to the quantum kind");
        return (t - s) * (t - s) / 2;
    case scale_kind::discrete:
        if (q)
            throw error(errc::kind_mismatch, "a base q only applies to the quantum kind");
        if (!is_integer(t) || !is_integer(s))
            throw error(errc::kind_mismatch, "discrete monomials need integer arguments");
        return (t - s) * (t - s - 1) / 2;
    case scale_kind::quantum:
        if (!q)
            throw error(errc::kind_mismatch, "the quantum kind needs a base q");
        if (!(*q > 1))
            throw error(errc::bad_base, "q must exceed 1");
        if (!is_power_of(*q, s))
            throw error(errc::kind_mismatch, "s must be a power of q");
        return (t - s) * (t - *q * s) / (1 + *q);
    }
    throw error(errc::kind_mismatch, "unknown scale kind");
}

double quantum_monomial_product(double q, int k, double t, double s)
{
    if (!(q > 1))
        throw error(errc::bad_base, "q must exceed 1");
    if (k < 0)
        throw error(errc::out_of_range, "monomial order must be non-negative");
    double product = 1.0;
    double q_power = 1.0;
    double q_sum = 0.0;
    for (int v = 0; v < k; ++v) {
        q_sum += q_power;
        product *= (t - q_power * s) / q_sum;
        q_power *= q;
    }
    return product;
}

} // namespace tsc
