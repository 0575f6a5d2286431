#include "tscalc/quadrature.hpp"

#include "tscalc/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace tsc {

void quadrature_config::validate() const
{
    if (!(abs_tol > 0))
        throw error(errc::invalid_config, "abs_tol must be positive");
    if (!(rel_tol > 0))
        throw error(errc::invalid_config, "rel_tol must be positive");
    if (max_depth < 1)
        throw error(errc::invalid_config, "max_depth must be at least 1");
    if (!(fd_step > 0))
        throw error(errc::invalid_config, "fd_step must be positive");
    if (dense_samples < 2)
        throw error(errc::invalid_config, "dense_samples must be at least 2");
}

namespace {

// QUADPACK qk15 abscissae and weights; Gauss nodes are the odd entries.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct panel {
    double kronrod;
    double error;
    double abs_integral;
};

panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(center);
    double kronrod = wgk[7] * fc;
    double gauss = wg[3] * fc;
    double abs_sum = wgk[7] * std::abs(fc);

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += wgk[j] * (f1 + f2);
        abs_sum += wgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            gauss += wg[j / 2] * (f1 + f2);
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

class adaptive_integrator {
public:
    adaptive_integrator(const std::function<double(double)>& f, const quadrature_config& cfg)
        : f_(f)
        , cfg_(cfg)
    {
    }

    double run(double lo, double hi)
    {
        const panel whole = gauss_kronrod(f_, lo, hi);
        if (!std::isfinite(whole.kronrod))
            throw error(errc::quadrature_failure, "integrand is not finite on the segment");
        const double tol = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(whole.kronrod));
        return refine(lo, hi, whole, tol, 0);
    }

private:
    double refine(double lo, double hi, const panel& p, double tol, int depth)
    {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        const double roundoff = 50 * eps * p.abs_integral;
        if (p.error <= tol || p.error <= roundoff)
            return p.kronrod;
        if (depth >= cfg_.max_depth)
            throw error(errc::quadrature_failure,
                        "tolerance not met after " + std::to_string(cfg_.max_depth)
                            + " bisections");
        const double mid = 0.5 * (lo + hi);
        const panel left = gauss_kronrod(f_, lo, mid);
        const panel right = gauss_kronrod(f_, mid, hi);
        if (!std::isfinite(left.kronrod) || !std::isfinite(right.kronrod))
            throw error(errc::quadrature_failure, "integrand is not finite on the segment");
        return refine(lo, mid, left, tol / 2, depth + 1)
               + refine(mid, hi, right, tol / 2, depth + 1);
    }

    const std::function<double(double)>& f_;
    const quadrature_config& cfg_;
};

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const quadrature_config& cfg)
{
    if (lo == hi)
        return 0.0;
    return adaptive_integrator(f, cfg).run(lo, hi);
}

} // namespace tsc
