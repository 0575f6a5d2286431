#ifndef TSCALC_QUADRATURE_HPP
#define TSCALC_QUADRATURE_HPP

#include <functional>

namespace tsc {

/// Tolerances and limits for every approximate computation in the library.
struct quadrature_config {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 40;
    double fd_step = 1e-6;
    int dense_samples = 1024;

    /// Throws invalid_config when an invariant is broken.
    void validate() const;
};

/// Adaptive Gauss-Kronrod (7/15) integral of f over [lo, hi], lo <= hi.
///
/// Nodes are strictly inside every panel, so f is never evaluated at lo or
/// hi. A panel is accepted when |K15 - G7| is below its share of
/// max(abs_tol, rel_tol * |estimate|) or below the round-off floor of the
/// panel. Throws quadrature_failure once max_depth bisections are exhausted.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const quadrature_config& cfg);

} // namespace tsc

#endif
