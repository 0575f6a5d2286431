#ifndef TSCALC_TIMESCALE_HPP
#define TSCALC_TIMESCALE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsc {

/// Closed segment [lo, hi]; lo == hi is an isolated point.
struct segment {
    double lo;
    double hi;

    bool is_point() const noexcept { return lo == hi; }
    bool operator==(const segment&) const = default;
};

enum class side_kind { dense, scattered };

struct point_class {
    side_kind right;
    side_kind left;
    bool is_min;
    bool is_max;

    bool operator==(const point_class&) const = default;
};

/// Tolerance used when matching a value against an endpoint p.
inline double membership_tolerance(double p) noexcept
{
    return 1e-12 * std::max(1.0, std::abs(p));
}

/// A finite union of disjoint closed segments and isolated points.
///
/// Immutable after construction. Point arguments are matched against the
/// scale with `membership_tolerance`: a value within tolerance of a segment
/// endpoint is treated as that endpoint, and every operation works on that
/// canonical member (see `snap`).
class time_scale {
public:
    /// Sorts, validates and merges overlapping or touching segments.
    /// Throws empty_scale, unordered_segment or non_finite_endpoint.
    static time_scale make(std::vector<std::pair<double, double>> segments);

    /// Isolated integers a, a+1, ..., b. Throws degenerate_window if a >= b.
    static time_scale integers_window(long long a, long long b);
    /// Isolated points q^m, ..., q^n. Throws bad_base or degenerate_window.
    static time_scale q_lattice(double q, int m, int n);
    /// The single dense segment [a, b].
    static time_scale real_interval(double a, double b);

    std::span<const segment> segments() const noexcept { return segments_; }
    double a() const noexcept { return segments_.front().lo; }
    double b() const noexcept { return segments_.back().hi; }

    bool contains(double t) const noexcept { return snap(t).has_value(); }

    /// Canonical member for t, or nullopt when t is not in the scale.
    std::optional<double> snap(double t) const noexcept;

    /// Index of the segment holding t. Throws point_not_in_scale.
    std::size_t segment_index(double t) const;

    double sigma(double t) const;
    double rho(double t) const;
    double mu(double t) const;
    double nu(double t) const;
    point_class classify(double t) const;

    /// True when t is the maximum and it is left-scattered, i.e. t is not in
    /// the kappa-set on which Delta-derivatives are defined.
    bool is_left_scattered_max(double t) const;

    /// Right-scattered points of the scale in ascending order.
    std::vector<double> scattered_points() const;

    /// Scattered points plus the endpoints and midpoint of every dense
    /// segment, ascending and without duplicates.
    std::vector<double> sample_points() const;

    std::vector<std::pair<double, double>> as_pairs() const;

    /// Short human-readable description, e.g. "[0,1] U {2} U [3,4]".
    std::string describe() const;

    bool operator==(const time_scale&) const = default;

private:
    explicit time_scale(std::vector<segment> segments)
        : segments_(std::move(segments))
    {
    }

    struct location {
        std::size_t index;
        double value;
        bool at_lo;
        bool at_hi;
    };

    std::optional<location> locate(double t) const noexcept;
    location require(double t) const;

    std::vector<segment> segments_;
};

} // namespace tsc

#endif
