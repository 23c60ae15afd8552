#pragma once

#include <vector>

#include "halfline/grid.hpp"

namespace halfline {

enum class QuadratureRule { Trapezoid, Simpson };

/// Composite quadrature of a sampled function over its grid.
/// Trapezoid is O(h^2); Simpson (odd node count) is O(h^4).
double integrate(const SampledFunction& f, QuadratureRule rule = QuadratureRule::Trapezoid);

/// Quadrature weights for the given rule on an n-node uniform grid of step h.
std::vector<double> quadrature_weights(std::size_t n, double h,
                                       QuadratureRule rule = QuadratureRule::Trapezoid);

/// Running trapezoid integral: out[i] = integral of f from grid.start() to node i.
std::vector<double> cumulative_trapezoid(const SampledFunction& f);

/// sin(sqrt(lambda) t)/sqrt(lambda), continued across lambda = 0:
/// equals t at lambda = 0 and sinh(sqrt(-lambda) t)/sqrt(-lambda) for lambda < 0.
/// Entire in both arguments; a short power series is used near lambda*t^2 = 0
/// so the branch switch is smooth.
double sine_kernel(double lambda, double t);

/// t-derivative of sine_kernel: cos(sqrt(lambda) t) continued across zero.
double sine_kernel_dt(double lambda, double t);

/// integral_0^t sine_kernel(lambda, tau) d tau = (1 - cos(sqrt(lambda) t))/lambda,
/// continued across lambda = 0 (value t^2/2 there).
double cosine_moment(double lambda, double t);

/// Sine integral Si(x) = integral_0^x sin(u)/u du for x >= 0 (series below
/// x = 12, asymptotic expansion beyond).
double sine_integral(double x);

}  // namespace halfline
