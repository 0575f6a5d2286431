#include "tscalc/error.hpp"
#include "tscalc/monomials.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

using namespace tsc;

namespace {

double binomial(double n, int k)
{
    double r = 1;
    for (int i = 0; i < k; ++i)
        r *= (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("spot values")
{
    const time_scale z = time_scale::integers_window(0, 5);
    const time_scale r = time_scale::real_interval(0, 3);
    const time_scale q = time_scale::q_lattice(2, 0, 3);

    CHECK(monomial_h(z, 0, 3, 1) == 1);
    CHECK(monomial_h(r, 0, 2.5, 1) == 1);
    CHECK(monomial_h(z, 2, 5, 0) == 10);
    CHECK(monomial_h(r, 2, 3, 1) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(monomial_h(q, 2, 4, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(monomial_h(z, 1, 2, 4) == -2);
    CHECK(monomial_h(z, 2, 2, 4) == 3);
}

TEST_CASE("closed forms")
{
    CHECK(h2_closed_form(scale_kind::continuous, 3, 1) == 2);
    CHECK(h2_closed_form(scale_kind::discrete, 5, 0) == 10);
    CHECK(h2_closed_form(scale_kind::quantum, 4, 1, 2.0) == 2);
    CHECK_THROWS_AS(h2_closed_form(scale_kind::quantum, 4, 1), error);
    CHECK_THROWS_AS(h2_closed_form(scale_kind::continuous, 4, 1, 2.0), error);
    CHECK_THROWS_AS(h2_closed_form(scale_kind::quantum, 4, 1, 1.0), error);
    CHECK(quantum_monomial_product(2, 2, 4, 1) == 2);
    CHECK(quantum_monomial_product(2, 0, 4, 1) == 1);
}

TEST_CASE("higher orders match known families")
{
    const time_scale z = time_scale::integers_window(-3, 8);
    const time_scale r = time_scale::real_interval(-1, 2);
    for (int k = 0; k <= 4; ++k) {
        for (int t = -3; t <= 8; ++t)
            for (int s : {-3, 0, 2, 8})
                CHECK(monomial_h(z, k, t, s) == doctest::Approx(binomial(t - s, k)).epsilon(1e-12));
        for (double t : {-1.0, -0.3, 0.5, 2.0})
            for (double s : {-1.0, 0.0, 1.7}) {
                const double expected = std::pow(t - s, k) / std::tgamma(k + 1);
                CHECK(std::abs(monomial_h(r, k, t, s) - expected) <= 1e-9);
            }
    }
    const time_scale q = time_scale::q_lattice(3, -1, 3);
    for (const segment& ts : q.segments())
        for (const segment& ss : q.segments())
            for (int k = 0; k <= 3; ++k)
                CHECK(monomial_h(q, k, ts.lo, ss.lo)
                      == doctest::Approx(quantum_monomial_product(3, k, ts.lo, ss.lo)).epsilon(1e-12));
}

TEST_CASE("mixed scale recursion and errors")
{
    const time_scale t = time_scale::make({{0, 1}, {2, 2}, {3, 4}});
    // h1 is the signed delta length.
    CHECK(monomial_h(t, 1, 4, 0) == 4);
    // h2(t,0) on [0,1] is t^2/2; across the gap add mu * h1.
    CHECK(monomial_h(t, 2, 1, 0) == doctest::Approx(0.5));
    CHECK(monomial_h(t, 2, 2, 0) == doctest::Approx(1.5));
    CHECK(monomial_h(t, 2, 3, 0) == doctest::Approx(3.5));
    CHECK(monomial_h(t, 2, 4, 0) == doctest::Approx(3.5 + 3.5));

    CHECK_THROWS_AS(monomial_h(t, 2, 1.5, 0), error);
    CHECK_THROWS_AS(monomial_h(t, -1, 1, 0), error);
}

TEST_CASE("table is safe to share between threads")
{
    const monomial_table table(time_scale::make({{0, 1}, {2, 2}, {3, 4}}));
    std::vector<double> results(4);
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < results.size(); ++i)
        workers.emplace_back([&, i] { results[i] = table(3, 4, 0.5); });
    for (auto& w : workers)
        w.join();
    for (double v : results)
        CHECK(v == results[0]);
}
