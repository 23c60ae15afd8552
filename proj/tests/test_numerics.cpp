#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "halfline/errors.hpp"
#include "halfline/fredholm.hpp"
#include "halfline/grid.hpp"
#include "halfline/quadrature.hpp"

using namespace halfline;

namespace {

// Independent power-series oracle for sin(sqrt(lambda) t)/sqrt(lambda):
// sum over m of (-1)^m lambda^m t^{2m+1} / (2m+1)!
double sine_kernel_series(double lambda, double t, int terms = 24) {
    double acc = 0.0;
    double num = t;  // lambda^m t^{2m+1}
    double fact = 1.0;
    for (int m = 0; m < terms; ++m) {
        acc += (m % 2 == 0 ? 1.0 : -1.0) * num / fact;
        num *= lambda * t * t;
        fact *= (2.0 * m + 2.0) * (2.0 * m + 3.0);
    }
    return acc;
}

}  // namespace

TEST_CASE("grid basics") {
    Grid1D g(0.0, 1.0, 11);
    CHECK(g.step() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(10) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.nearest_index(0.31) == 3);
    CHECK_THROWS(Grid1D(1.0, 0.0, 5));
    CHECK_THROWS(Grid1D(0.0, 1.0, 1));
}

TEST_CASE("sampled function rejects non-finite values") {
    Grid1D g(0.0, 1.0, 3);
    CHECK_THROWS(SampledFunction(g, {0.0, std::nan(""), 1.0}));
    CHECK_THROWS(SampledFunction(g, {0.0, 1.0}));
}

TEST_CASE("sine_kernel at the stated points") {
    CHECK(sine_kernel(0.0, 3.5) == doctest::Approx(3.5).epsilon(1e-14));
    const double pi = 3.14159265358979323846;
    CHECK(std::abs(sine_kernel(pi * pi, 1.0)) < 1e-14);
    CHECK(sine_kernel(-1.0, 1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
}

TEST_CASE("sine_kernel matches the power series for |lambda| t^2 <= 1") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ut(0.05, 2.0);
    std::uniform_real_distribution<double> usign(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        double t = ut(rng);
        double lambda = usign(rng) / (t * t);  // |lambda| t^2 <= 1
        double got = sine_kernel(lambda, t);
        double want = sine_kernel_series(lambda, t);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("integrate: zero, linear exact, quadratic error bound") {
    Grid1D g11(0.0, 1.0, 11);
    CHECK(integrate(SampledFunction::zeros(g11)) == 0.0);

    auto linear = SampledFunction::sample(g11, [](double x) { return x; });
    CHECK(integrate(linear) == doctest::Approx(0.5).epsilon(1e-15));

    Grid1D g101(0.0, 1.0, 101);
    auto quad = SampledFunction::sample(g101, [](double x) { return x * x; });
    CHECK(std::abs(integrate(quad) - 1.0 / 3.0) < 2e-5);
    // Simpson is exact for cubics
    auto cub = SampledFunction::sample(g101, [](double x) { return x * x * x; });
    CHECK(integrate(cub, QuadratureRule::Simpson) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("integrate is linear") {
    Grid1D g(0.0, 2.0, 73);
    auto f = SampledFunction::sample(g, [](double x) { return std::sin(3.0 * x); });
    auto gfun = SampledFunction::sample(g, [](double x) { return std::exp(-x); });
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        double alpha = u(rng), beta = u(rng);
        std::vector<double> combo(g.count());
        for (std::size_t i = 0; i < g.count(); ++i) combo[i] = alpha * f[i] + beta * gfun[i];
        double lhs = integrate(SampledFunction(g, combo));
        double rhs = alpha * integrate(f) + beta * integrate(gfun);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("solve_fredholm2: K = 0 returns rhs") {
    Grid1D g(0.0, 1.0, 21);
    KernelMatrix K(g, g);
    auto rhs = SampledFunction::sample(g, [](double x) { return std::cos(x); });
    auto f = solve_fredholm2(K, rhs, quadrature_weights(g.count(), g.step()));
    for (std::size_t i = 0; i < g.count(); ++i)
        CHECK(f[i] == doctest::Approx(rhs[i]).epsilon(1e-13));
}

TEST_CASE("solve_fredholm2: constant kernel has closed form f = 1/(1+c)") {
    Grid1D g(0.0, 1.0, 41);
    const double c = 0.7;
    auto K = KernelMatrix::build(g, g, [&](double, double) { return c; }, true);
    auto rhs = SampledFunction::sample(g, [](double) { return 1.0; });
    auto f = solve_fredholm2(K, rhs, quadrature_weights(g.count(), g.step()));
    for (std::size_t i = 0; i < g.count(); ++i)
        CHECK(f[i] == doctest::Approx(1.0 / (1.0 + c)).epsilon(1e-12));
}

TEST_CASE("solve_fredholm2 raises SingularSystem on a rank-deficient operator") {
    // K = -I/w makes I + K W exactly zero.
    Grid1D g(0.0, 1.0, 9);
    auto w = quadrature_weights(g.count(), g.step());
    KernelMatrix K(g, g);
    for (std::size_t i = 0; i < g.count(); ++i) K(i, i) = -1.0 / w[i];
    auto rhs = SampledFunction::sample(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(solve_fredholm2(K, rhs, w), SingularSystem);
}

TEST_CASE("solve_fredholm2 grid refinement converges at second order") {
    auto solve_at = [](std::size_t n) {
        Grid1D g(0.0, 1.0, n);
        auto K = KernelMatrix::build(
            g, g, [](double t, double s) { return 0.5 * std::exp(-(t - s) * (t - s)); }, false);
        auto rhs = SampledFunction::sample(g, [](double x) { return 1.0 + x; });
        return solve_fredholm2(K, rhs, quadrature_weights(n, g.step()));
    };
    auto coarse = solve_at(41);
    auto mid = solve_at(81);
    auto fine = solve_at(161);
    // compare at shared nodes x = 0.5
    double c = coarse[20], m = mid[40], f = fine[80];
    double e1 = std::abs(c - f), e2 = std::abs(m - f);
    CHECK(e2 < e1);
    CHECK(e1 < 1e-3);  // smooth kernel, small correction
}

TEST_CASE("kernel matrix symmetry invariant") {
    Grid1D g(0.0, 1.0, 15);
    auto K = KernelMatrix::build(
        g, g, [](double t, double s) { return t * s + std::cos(t - s); }, true);
    CHECK(K.max_abs() > 0.0);
    KernelMatrix bad(g, g);
    bad(0, 1) = 1.0;  // asymmetric
    CHECK_THROWS(bad.check_symmetry());
}
