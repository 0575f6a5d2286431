#ifndef TSCALC_MONOMIALS_HPP
#define TSCALC_MONOMIALS_HPP

#include "tscalc/quadrature.hpp"
#include "tscalc/timescale.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace tsc {

/// Generalized monomials h_k(t, s) on one time scale.
///
/// h_0 = 1 and h_{k+1}(t, s) is the Delta-integral of h_k(., s) from s to t.
/// For every (k, s) the values of h_k(., s) at all segment endpoints are
/// computed once and cached; a query then only integrates h_{k-1} across
/// the dense part of the segment holding t. The cache is guarded by a mutex,
/// so one table may be shared between threads.
class monomial_table {
public:
    explicit monomial_table(time_scale scale, quadrature_config cfg = {});

    /// h_k(t, s). Throws out_of_range for k < 0, point_not_in_scale, or
    /// quadrature_failure.
    double operator()(int k, double t, double s) const;

    const time_scale& scale() const noexcept { return scale_; }

private:
    struct anchors {
        std::vector<double> at_lo;
        std::vector<double> at_hi;
    };

    double eval(int k, double t, double s) const;
    double integrate_lower(int k, double from, double to, double s) const;
    const anchors& table(int k, double s) const;
    anchors build(int k, double s) const;

    time_scale scale_;
    quadrature_config cfg_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, double>, anchors> cache_;
};

/// One-off h_k(t, s) on `scale`; builds a throwaway monomial_table.
double monomial_h(const time_scale& scale, int k, double t, double s,
                  const quadrature_config& cfg = {});

enum class scale_kind { continuous, discrete, quantum };

/// Closed forms of h_2 on R, Z and q^N0:
///   continuous  (t - s)^2 / 2
///   discrete    (t - s)(t - s - 1) / 2
///   quantum     (t - s)(t - q s) / (1 + q)
/// Throws bad_base (q <= 1) or kind_mismatch (q given for a non-quantum kind,
/// q missing for quantum, s not a power of q, or non-integer discrete points).
double h2_closed_form(scale_kind kind, double t, double s, std::optional<double> q = std::nullopt);

/// Product form of h_k on q^N0: prod_{v<k} (t - q^v s) / (1 + q + ... + q^v).
double quantum_monomial_product(double q, int k, double t, double s);

} // namespace tsc

#endif
