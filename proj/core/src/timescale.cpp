#include "tscalc/timescale.hpp"

#include "tscalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tsc {

namespace {

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

bool near(double t, double p) noexcept
{
    return std::abs(t - p) <= membership_tolerance(p);
}

} // namespace

time_scale time_scale::make(std::vector<std::pair<double, double>> input)
{
    if (input.empty())
        throw error(errc::empty_scale, "a time scale needs at least one segment");
    for (const auto& [lo, hi] : input) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw error(errc::non_finite_endpoint, "segment endpoints must be finite");
        if (lo > hi)
            throw error(errc::unordered_segment,
                        "segment (" + format_number(lo) + "," + format_number(hi)
                            + ") has lo > hi");
    }
    std::sort(input.begin(), input.end());

    std::vector<segment> merged;
    merged.reserve(input.size());
    for (const auto& [lo, hi] : input) {
        if (!merged.empty() && lo <= merged.back().hi + membership_tolerance(merged.back().hi)) {
            merged.back().hi = std::max(merged.back().hi, hi);
            continue;
        }
        merged.push_back({lo, hi});
    }
    return time_scale(std::move(merged));
}

time_scale time_scale::integers_window(long long a, long long b)
{
    if (a >= b)
        throw error(errc::degenerate_window, "integers window needs a < b");
    std::vector<segment> pts;
    pts.reserve(static_cast<std::size_t>(b - a + 1));
    for (long long k = a; k <= b; ++k)
        pts.push_back({static_cast<double>(k), static_cast<double>(k)});
    return time_scale(std::move(pts));
}

time_scale time_scale::q_lattice(double q, int m, int n)
{
    if (!(q > 1.0) || !std::isfinite(q))
        throw error(errc::bad_base, "q-lattice needs q > 1");
    if (m >= n)
        throw error(errc::degenerate_window, "q-lattice needs m < n");
    std::vector<segment> pts;
    pts.reserve(static_cast<std::size_t>(n - m + 1));
    for (int k = m; k <= n; ++k) {
        const double p = std::pow(q, k);
        pts.push_back({p, p});
    }
    return time_scale(std::move(pts));
}

time_scale time_scale::real_interval(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        throw error(errc::non_finite_endpoint, "interval endpoints must be finite");
    if (a >= b)
        throw error(errc::degenerate_window, "real interval needs a < b");
    return time_scale({segment{a, b}});
}

std::optional<time_scale::location> time_scale::locate(double t) const noexcept
{
    if (!std::isfinite(t))
        return std::nullopt;

    const auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                     [](double v, const segment& s) { return v < s.lo; });
    const auto idx = static_cast<std::size_t>(it - segments_.begin());

    if (idx > 0) {
        const std::size_t i = idx - 1;
        const segment& s = segments_[i];
        const bool lo_match = near(t, s.lo);
        const bool hi_match = near(t, s.hi);
        if (lo_match || hi_match || t <= s.hi) {
            if (s.is_point())
                return location{i, s.lo, true, true};
            if (lo_match)
                return location{i, s.lo, true, false};
            if (hi_match)
                return location{i, s.hi, false, true};
            return location{i, t, false, false};
        }
    }
    if (idx < segments_.size() && near(t, segments_[idx].lo)) {
        const segment& s = segments_[idx];
        return location{idx, s.lo, true, s.is_point()};
    }
    return std::nullopt;
}

time_scale::location time_scale::require(double t) const
{
    if (auto loc = locate(t))
        return *loc;
    throw error(errc::point_not_in_scale, format_number(t) + " is not in " + describe());
}

std::optional<double> time_scale::snap(double t) const noexcept
{
    if (auto loc = locate(t))
        return loc->value;
    return std::nullopt;
}

std::size_t time_scale::segment_index(double t) const
{
    return require(t).index;
}

double time_scale::sigma(double t) const
{
    const location loc = require(t);
    if (!loc.at_hi)
        return loc.value;
    if (loc.index + 1 == segments_.size())
        return loc.value;
    return segments_[loc.index + 1].lo;
}

double time_scale::rho(double t) const
{
    const location loc = require(t);
    if (!loc.at_lo)
        return loc.value;
    if (loc.index == 0)
        return loc.value;
    return segments_[loc.index - 1].hi;
}

double time_scale::mu(double t) const
{
    const double s = require(t).value;
    return sigma(s) - s;
}

double time_scale::nu(double t) const
{
    const double s = require(t).value;
    return s - rho(s);
}

point_class time_scale::classify(double t) const
{
    const double s = require(t).value;
    return point_class{
        mu(s) > 0 ? side_kind::scattered : side_kind::dense,
        nu(s) > 0 ? side_kind::scattered : side_kind::dense,
        s == a(),
        s == b(),
    };
}

bool time_scale::is_left_scattered_max(double t) const
{
    const double s = require(t).value;
    return s == b() && nu(s) > 0;
}

std::vector<double> time_scale::scattered_points() const
{
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i)
        out.push_back(segments_[i].hi);
    return out;
}

std::vector<double> time_scale::sample_points() const
{
    std::vector<double> out;
    for (const segment& s : segments_) {
        out.push_back(s.lo);
        if (!s.is_point()) {
            out.push_back(s.lo + (s.hi - s.lo) / 2);
            out.push_back(s.hi);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> time_scale::as_pairs() const
{
    std::vector<std::pair<double, double>> out;
    out.reserve(segments_.size());
    for (const segment& s : segments_)
        out.emplace_back(s.lo, s.hi);
    return out;
}

std::string time_scale::describe() const
{
    constexpr std::size_t max_listed = 8;
    if (segments_.size() > max_listed) {
        return std::to_string(segments_.size()) + " components in [" + format_number(a()) + ","
               + format_number(b()) + "]";
    }
    std::string out;
    for (const segment& s : segments_) {
        if (!out.empty())
            out += " U ";
        if (s.is_point())
            out += "{" + format_number(s.lo) + "}";
        else
            out += "[" + format_number(s.lo) + "," + format_number(s.hi) + "]";
    }
    return out;
}

} // namespace tsc
