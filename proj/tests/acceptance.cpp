// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "tscalc/calculus.hpp"
#include "tscalc/error.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/harness.hpp"
#include "tscalc/inequalities.hpp"
#include "tscalc/monomials.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef TSCHECK_PATH
#error "TSCHECK_PATH must name the tscheck executable"
#endif

using namespace tsc;

namespace {

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail)
{
    std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::string fmt(const char* pattern, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs fn and turns a stray exception into a failure of that criterion.
void criterion(int id, const char* title, const std::function<std::pair<bool, std::string>()>& fn)
{
    try {
        const auto [pass, detail] = fn();
        report(id, title, pass, detail);
    } catch (const std::exception& e) {
        report(id, title, false, std::string("exception: ") + e.what());
    }
}

std::string polynomial_text(std::mt19937_64& rng, int max_degree, bool integer_coeffs)
{
    std::uniform_real_distribution<double> coeff(-4, 4);
    const int degree = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
    std::string text = "0";
    for (int k = 0; k <= degree; ++k) {
        const double c = integer_coeffs ? std::round(coeff(rng)) : coeff(rng);
        text += " + (" + to_string(expr::constant(c)) + ")*t^" + std::to_string(k);
    }
    return text;
}

std::vector<std::pair<double, double>> random_mixed_scale(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<std::pair<double, double>> segs;
    double x = 10 * u(rng) - 5;
    const int count = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < count; ++i) {
        const double w = rng() % 2 ? 0.0 : 2 * u(rng);
        segs.emplace_back(x, x + w);
        x += w + 0.1 + u(rng);
    }
    return segs;
}

double rel_err(double got, double want)
{
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// 1: Montgomery identity on random scales, exact on integer windows.
std::pair<bool, std::string> montgomery_identity()
{
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    double worst_scaled = 0;
    double worst_z = 0;

    fuzz_config cfg;
    cfg.seed = 1;
    for (std::uint64_t i = 0; i < 150; ++i) {
        const scenario_spec trial = generate_trial(cfg, i);
        const time_scale scale = build_scale(trial.timescale);
        const real_function f = to_real_function(parse(trial.functions.front()));
        const double t = trial.points.front();
        const double r = montgomery_residual(scale, f, t);
        worst_scaled = std::max(worst_scaled, std::abs(r) / (1 + std::abs(f(t))));
    }
    for (int i = 0; i < 50; ++i) {
        const long long a = static_cast<long long>(rng() % 21) - 10;
        const long long b = a + 1 + static_cast<long long>(rng() % 15);
        const time_scale scale = time_scale::integers_window(a, b);
        const real_function f = to_real_function(parse(polynomial_text(rng, 4, true)));
        const double t = static_cast<double>(a + static_cast<long long>(rng() % static_cast<unsigned>(b - a + 1)));
        const double r = montgomery_residual(scale, f, t);
        worst_z = std::max(worst_z, std::abs(r));
        worst_scaled = std::max(worst_scaled, std::abs(r) / (1 + std::abs(f(t))));
    }
    const double elapsed = seconds_since(start);
    const bool pass = worst_scaled <= 1e-7 && worst_z <= 1e-9 && elapsed < 10;
    return {pass, fmt("200 triples, max |r|/(1+|f(t)|) = %.3g, max integer-window |r| = %.3g, %.2f s",
                      worst_scaled, worst_z, elapsed)};
}

// 2: fuzz soundness at seed 42.
std::pair<bool, std::string> fuzz_soundness()
{
    const auto start = std::chrono::steady_clock::now();
    fuzz_config cfg;
    cfg.seed = 42;
    cfg.trials = 10000;
    const fuzz_summary s = fuzz(cfg);
    const double elapsed = seconds_since(start);
    const bool pass = s.trials_run == 10000 && s.violations == 0 && s.errors == 0
                      && s.min_slack >= -1e-7 && elapsed < 120;
    return {pass, fmt("trials %lld, violations %lld, errors %lld, min_slack %.6g, %.1f s",
                      s.trials_run, s.violations, s.errors, s.min_slack, elapsed)};
}

// 3: kernel integral and mean-value identities.
std::pair<bool, std::string> kernel_identities()
{
    std::mt19937_64 rng(77);
    double worst_kernel = 0;
    double worst_mean = 0;
    for (int i = 0; i < 100; ++i) {
        const time_scale scale = time_scale::make(random_mixed_scale(rng));
        const real_function f = to_real_function(parse(polynomial_text(rng, 5, false)));
        const std::vector<double> pts = scale.sample_points();
        const double t = pts[rng() % pts.size()];
        const double a = scale.a(), b = scale.b();

        const real_function left([a](double s) { return s - a; });
        const real_function right([b](double s) { return s - b; });
        const double kernel = delta_integral(scale, left, a, t) + delta_integral(scale, right, t, b);
        const double h = monomial_h(scale, 2, t, a) - monomial_h(scale, 2, t, b);
        worst_kernel = std::max(worst_kernel, rel_err(kernel, h));

        const real_function fd = delta_derivative_function(scale, f);
        const double mean = delta_integral(scale, fd, a, b) / (b - a);
        worst_mean = std::max(worst_mean, rel_err(mean, (f(b) - f(a)) / (b - a)));
    }
    const bool pass = worst_kernel <= 1e-8 && worst_mean <= 1e-8;
    return {pass, fmt("100 triples, kernel rel err %.3g, mean-value rel err %.3g", worst_kernel, worst_mean)};
}

// 4: generic h2 against the three closed forms.
std::pair<bool, std::string> monomial_coherence()
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3, 5);
    double worst[3] = {0, 0, 0};

    const time_scale r = time_scale::real_interval(-3, 5);
    for (int i = 0; i < 50; ++i) {
        const double t = u(rng), s = u(rng);
        worst[0] = std::max(worst[0], std::abs(monomial_h(r, 2, t, s) - h2_closed_form(scale_kind::continuous, t, s)));
    }
    const time_scale z = time_scale::integers_window(-6, 12);
    for (int i = 0; i < 50; ++i) {
        const double t = -6 + static_cast<double>(rng() % 19);
        const double s = i % 2 ? 0.0 : -6 + static_cast<double>(rng() % 19);
        // The closed form is stated for s = 0; shift by s otherwise.
        const double closed = h2_closed_form(scale_kind::discrete, t - s, 0);
        worst[1] = std::max(worst[1], std::abs(monomial_h(z, 2, t, s) - closed));
    }
    const double q = 1.5;
    const int m = -2, n = 6;
    const time_scale ql = time_scale::q_lattice(q, m, n);
    const double qm = std::pow(q, m);
    for (int i = 0; i < 50; ++i) {
        const double t = std::pow(q, m + static_cast<int>(rng() % (n - m + 1)));
        const double closed = h2_closed_form(scale_kind::quantum, t, qm, q);
        worst[2] = std::max(worst[2], rel_err(monomial_h(ql, 2, t, qm), closed));
    }
    const bool pass = worst[0] <= 1e-9 && worst[1] <= 1e-9 && worst[2] <= 1e-9;
    return {pass, fmt("max err continuous %.3g, discrete %.3g, quantum %.3g", worst[0], worst[1], worst[2])};
}

// 5: specializations against hand-evaluated values.
std::pair<bool, std::string> specialization_coherence()
{
    const std::vector<double> squares{0, 1, 4, 9, 16};
    const bound_report d = corollary_discrete(squares, 2);
    const bound_report c = corollary_continuous(to_real_function(parse("t^2")), 0, 1, 0, 0, 2);
    const bound_report q = corollary_quantum(to_real_function(parse("t^2")), 2, 0, 2, 2);
    const bool pass = d.lhs == 1.5 && d.rhs == 6 && std::abs(c.lhs - 1.0 / 6) <= 1e-9
                      && std::abs(c.rhs - 0.5) <= 1e-9 && std::abs(q.lhs - 4.0 / 3) <= 1e-9
                      && std::abs(q.rhs - 2.25) <= 1e-9 && d.holds && c.holds && q.holds;
    return {pass, fmt("discrete %.17g <= %.17g, continuous %.17g <= %.17g, quantum %.17g <= %.17g", d.lhs,
                      d.rhs, c.lhs, c.rhs, q.lhs, q.rhs)};
}

// 6: equality witness for the Ostrowski bound.
std::pair<bool, std::string> sharpness_witness()
{
    const bound_report r = ostrowski_check(time_scale::real_interval(0, 1), to_real_function(parse("t")), 1);
    const bool pass = std::abs(r.lhs - 0.5) <= 1e-9 && std::abs(r.rhs - 0.5) <= 1e-9;
    return {pass, fmt("lhs %.17g, rhs %.17g", r.lhs, r.rhs)};
}

// 7: f(t) = t makes the spread vanish, so lhs must too.
std::pair<bool, std::string> degenerate_case()
{
    fuzz_config cfg;
    cfg.seed = 42;
    const real_function f = to_real_function(parse("t"));
    double worst = 0;
    long long checked = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const time_scale scale = build_scale(generate_trial(cfg, i).timescale);
        const check_context ctx(scale, f);
        for (double t : scale.sample_points()) {
            worst = std::max(worst, ostrowski_gruss_check(ctx, t).lhs);
            ++checked;
        }
    }
    return {worst <= 1e-8, fmt("1000 fuzzed scales, %lld points, max lhs %.3g", checked, worst)};
}

// 8: linearity, orientation, additivity, integration by parts, zero width.
std::pair<bool, std::string> calculus_properties()
{
    std::mt19937_64 rng(8);
    double worst[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 100; ++i) {
        const time_scale scale = time_scale::make(random_mixed_scale(rng));
        const real_function f = to_real_function(parse(polynomial_text(rng, 4, false)));
        const real_function g = to_real_function(parse(polynomial_text(rng, 4, false)));
        const double a = scale.a(), b = scale.b();
        const std::vector<double> pts = scale.sample_points();
        const double c = pts[rng() % pts.size()];
        std::uniform_real_distribution<double> u(-3, 3);
        const double alpha = u(rng), beta = u(rng);

        const double If = delta_integral(scale, f, a, b);
        const double Ig = delta_integral(scale, g, a, b);
        const real_function combo([&](double t) { return alpha * f(t) + beta * g(t); });
        worst[0] = std::max(worst[0], rel_err(delta_integral(scale, combo, a, b), alpha * If + beta * Ig));
        worst[1] = std::max(worst[1], rel_err(delta_integral(scale, f, b, a), -If));
        worst[2] = std::max(worst[2],
                            rel_err(delta_integral(scale, f, a, c) + delta_integral(scale, f, c, b), If));

        const real_function fs = f_sigma(scale, f);
        const real_function fd = delta_derivative_function(scale, f);
        const real_function gd = delta_derivative_function(scale, g);
        const real_function parts([&](double t) { return fs(t) * gd(t) + fd(t) * g(t); });
        worst[3] = std::max(worst[3], rel_err(delta_integral(scale, parts, a, b), f(b) * g(b) - f(a) * g(a)));
        worst[4] = std::max(worst[4], std::abs(delta_integral(scale, f, c, c)));
    }
    const bool pass = worst[0] <= 1e-8 && worst[1] <= 1e-8 && worst[2] <= 1e-8 && worst[3] <= 1e-8
                      && worst[4] == 0;
    return {pass, fmt("100 pairs, linearity %.3g, orientation %.3g, additivity %.3g, by parts %.3g, zero width %.3g",
                      worst[0], worst[1], worst[2], worst[3], worst[4])};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 9: two CLI fuzz runs give identical bytes.
std::pair<bool, std::string> determinism()
{
    const std::string exe = TSCHECK_PATH;
    const std::string out1 = "acceptance_fuzz_run1.json";
    const std::string out2 = "acceptance_fuzz_run2.json";
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    const int rc1 = std::system(("\"" + exe + "\" fuzz --seed 7 --trials 100 --out " + out1).c_str());
    const int rc2 = std::system(("\"" + exe + "\" fuzz --seed 7 --trials 100 --out " + out2).c_str());
    const std::string a = slurp(out1);
    const std::string b = slurp(out2);
    const bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    return {pass, fmt("exit %d/%d, %zu and %zu bytes, %s", rc1, rc2, a.size(), b.size(),
                      a == b ? "identical" : "different")};
}

// 10: literal quantum correction term against the general form.
std::pair<bool, std::string> quantum_misprint()
{
    // Hand evaluation on {1, 2, 4}, f = t^2, t = 2: general lhs 4/3, literal
    // lhs |4 - 12 - 5*(2 - 30/3)| = 32.
    constexpr double frozen_difference = 92.0 / 3.0;
    const bound_report r = corollary_quantum(to_real_function(parse("t^2")), 2, 0, 2, 2);
    const double general = r.lhs;
    const double literal = r.inputs.param("lhs_literal").value_or(NAN);
    const double diff = literal - general;
    const bool pass = diff != 0 && std::abs(diff - frozen_difference) <= 1e-9
                      && std::abs(r.inputs.param("literal_minus_general").value_or(NAN) - diff) <= 1e-12;
    return {pass, fmt("general %.17g, literal %.17g, difference %.17g (frozen %.17g)", general, literal, diff,
                      frozen_difference)};
}

} // namespace

int main()
{
    criterion(1, "Montgomery identity", montgomery_identity);
    criterion(2, "fuzz soundness, seed 42", fuzz_soundness);
    criterion(3, "kernel identities", kernel_identities);
    criterion(4, "monomial coherence", monomial_coherence);
    criterion(5, "specialization coherence", specialization_coherence);
    criterion(6, "sharpness witness", sharpness_witness);
    criterion(7, "degenerate spread", degenerate_case);
    criterion(8, "calculus properties", calculus_properties);
    criterion(9, "determinism", determinism);
    criterion(10, "quantum misprint", quantum_misprint);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
