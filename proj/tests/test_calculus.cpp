#include "tscalc/calculus.hpp"
#include "tscalc/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tsc;

namespace {

real_function square()
{
    return {[](double t) { return t * t; }, "t^2", [](double t) { return 2 * t; }};
}

real_function square_no_derivative()
{
    return {[](double t) { return t * t; }, "t^2"};
}

real_function identity()
{
    return {[](double t) { return t; }, "t", [](double) { return 1.0; }};
}

errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected a tsc::error");
    return errc::spec_error;
}

} // namespace

TEST_CASE("delta derivative at scattered and dense points")
{
    const time_scale z = time_scale::integers_window(0, 5);
    CHECK(delta_derivative(z, square(), 3) == 7);

    const time_scale q = time_scale::q_lattice(2, 0, 3);
    CHECK(delta_derivative(q, square(), 4) == 12);

    const time_scale unit = time_scale::real_interval(0, 1);
    CHECK(delta_derivative(unit, square(), 0.5) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(delta_derivative(unit, square_no_derivative(), 0.5) == doctest::Approx(1.0).epsilon(1e-8));
    // Right endpoint of a dense segment: left-sided estimate.
    CHECK(delta_derivative(unit, square_no_derivative(), 1.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(delta_derivative(unit, square_no_derivative(), 0.0) == doctest::Approx(0.0).epsilon(1e-8));

    const time_scale gap = time_scale::make({{0, 1}, {2, 2}});
    // t=1 is right-scattered: (f(2) - f(1)) / 1.
    CHECK(delta_derivative(gap, square(), 1) == 3);
    CHECK(code_of([&] { delta_derivative(gap, square(), 2); }) == errc::not_in_kappa);
    CHECK(code_of([&] { delta_derivative(gap, square(), 1.5); }) == errc::point_not_in_scale);
    // Dense max keeps its derivative.
    CHECK(delta_derivative(unit, square(), 1.0) == doctest::Approx(2.0));
}

TEST_CASE("f sigma")
{
    const time_scale z = time_scale::integers_window(0, 5);
    CHECK(f_sigma(z, square())(2) == 9);

    const time_scale unit = time_scale::real_interval(0, 1);
    const real_function fs = f_sigma(unit, square());
    for (double t : {0.0, 0.25, 0.5, 1.0})
        CHECK(fs(t) == t * t);

    const time_scale q = time_scale::q_lattice(2, 0, 2);
    CHECK(f_sigma(q, identity())(2) == 4);
}

TEST_CASE("delta integral")
{
    const time_scale z = time_scale::integers_window(0, 5);
    CHECK(delta_integral(z, square(), 0, 3) == 5);
    CHECK(delta_integral(z, square(), 3, 0) == -5);
    CHECK(delta_integral(z, square(), 2, 2) == 0);

    const time_scale unit = time_scale::real_interval(0, 1);
    CHECK(delta_integral(unit, square(), 0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(delta_integral(unit, square(), 0.5, 0.5) == 0);

    const time_scale gap = time_scale::make({{0, 1}, {2, 2}});
    CHECK(delta_integral(gap, square(), 0, 2) == doctest::Approx(4.0 / 3).epsilon(1e-10));
    CHECK(delta_integral(gap, square(), 1, 2) == 1);

    const time_scale q = time_scale::q_lattice(2, 0, 2);
    // mu(1) f(1) + mu(2) f(2) = 1 + 8.
    CHECK(delta_integral(q, square(), 1, 4) == 9);

    CHECK(code_of([&] { delta_integral(gap, square(), 0, 1.5); }) == errc::point_not_in_scale);
}

TEST_CASE("delta sup inf")
{
    const time_scale z = time_scale::integers_window(0, 5);
    const derivative_range zr = delta_sup_inf(z, square());
    CHECK(zr.gamma == 1);
    CHECK(zr.Gamma == 9);

    const time_scale unit = time_scale::real_interval(0, 1);
    const derivative_range ur = delta_sup_inf(unit, identity());
    CHECK(ur.gamma == doctest::Approx(1.0));
    CHECK(ur.Gamma == doctest::Approx(1.0));

    const time_scale q = time_scale::q_lattice(2, 0, 2);
    const derivative_range qr = delta_sup_inf(q, square());
    CHECK(qr.gamma == 3);
    CHECK(qr.Gamma == 6);
}

TEST_CASE("verification grid covers every segment")
{
    quadrature_config cfg;
    cfg.dense_samples = 8;
    const time_scale t = time_scale::make({{0, 1}, {2, 2}, {3, 4}});
    const std::vector<double> grid = verification_grid(t, cfg);
    CHECK(grid.front() == 0);
    CHECK(grid.back() == 4);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    for (double g : grid)
        CHECK(t.contains(g));
    CHECK(std::find(grid.begin(), grid.end(), 2.0) != grid.end());
}

// Integration properties over random mixed scales with exact polynomial oracles
// on the scattered parts.
TEST_CASE("integral properties on random scales")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 1);
    auto poly = [&] {
        const double c0 = u(rng) * 4 - 2, c1 = u(rng) * 4 - 2, c2 = u(rng) * 4 - 2;
        return real_function([=](double t) { return c0 + c1 * t + c2 * t * t; }, "p",
                             [=](double t) { return c1 + 2 * c2 * t; });
    };
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::pair<double, double>> segs;
        double x = u(rng);
        for (int i = 0; i < 4; ++i) {
            const double w = rng() % 2 ? 0.0 : u(rng);
            segs.emplace_back(x, x + w);
            x += w + 0.2 + u(rng);
        }
        const time_scale T = time_scale::make(segs);
        const real_function f = poly();
        const real_function g = poly();
        const double a = T.a(), b = T.b();
        const std::vector<double> pts = T.sample_points();
        const double c = pts[pts.size() / 2];

        const double If = delta_integral(T, f, a, b);
        const double Ig = delta_integral(T, g, a, b);
        const real_function comb([&](double t) { return 2 * f(t) - 3 * g(t); });
        const double scale = 1 + std::abs(If) + std::abs(Ig);
        CHECK(std::abs(delta_integral(T, comb, a, b) - (2 * If - 3 * Ig)) <= 1e-8 * scale);
        CHECK(delta_integral(T, f, b, a) == -If);
        CHECK(std::abs(delta_integral(T, f, a, c) + delta_integral(T, f, c, b) - If) <= 1e-8 * scale);

        // (fg)^Delta = f^Delta g^sigma + f g^Delta, integrated.
        const real_function fd = delta_derivative_function(T, f);
        const real_function gd = delta_derivative_function(T, g);
        const real_function gs = f_sigma(T, g);
        const real_function parts([&](double t) { return fd(t) * gs(t) + f(t) * gd(t); });
        const double lhs = delta_integral(T, parts, a, b);
        const double rhs = f(b) * g(b) - f(a) * g(a);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * (1 + std::abs(rhs)));
    }
}
