#include "halfline/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace halfline {

double integrate(const SampledFunction& f, QuadratureRule rule) {
    const std::size_t n = f.size();
    const double h = f.grid.step();
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::invalid_argument("integrate: non-finite sample");
    if (rule == QuadratureRule::Trapezoid) {
        double s = 0.5 * (f.values.front() + f.values.back());
        for (std::size_t i = 1; i + 1 < n; ++i) s += f.values[i];
        return s * h;
    }
    if (n % 2 == 0)
        throw std::invalid_argument("integrate: Simpson rule needs an odd node count");
    double s = f.values.front() + f.values.back();
    for (std::size_t i = 1; i + 1 < n; i += 2) s += 4.0 * f.values[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) s += 2.0 * f.values[i];
    return s * h / 3.0;
}

std::vector<double> quadrature_weights(std::size_t n, double h, QuadratureRule rule) {
    std::vector<double> w(n, h);
    if (rule == QuadratureRule::Trapezoid) {
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
        return w;
    }
    if (n % 2 == 0)
        throw std::invalid_argument("quadrature_weights: Simpson rule needs an odd node count");
    for (std::size_t i = 0; i < n; ++i) {
        double c = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[i] = c * h / 3.0;
    }
    return w;
}

std::vector<double> cumulative_trapezoid(const SampledFunction& f) {
    const std::size_t n = f.size();
    const double h = f.grid.step();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        out[i] = out[i - 1] + 0.5 * h * (f.values[i - 1] + f.values[i]);
    return out;
}

double sine_kernel(double lambda, double t) {
    const double u = lambda * t * t;
    if (std::abs(u) < 1e-2) {
        // t * (1 - u/3! + u^2/5! - u^3/7! + u^4/9!), |next term| < 3e-19 at |u| = 1e-2
        double s = 1.0 + u * (-1.0 / 6.0 + u * (1.0 / 120.0 + u * (-1.0 / 5040.0 + u / 362880.0)));
        return t * s;
    }
    if (lambda > 0.0) {
        double rk = std::sqrt(lambda);
        return std::sin(rk * t) / rk;
    }
    double rk = std::sqrt(-lambda);
    return std::sinh(rk * t) / rk;
}

double sine_kernel_dt(double lambda, double t) {
    const double u = lambda * t * t;
    if (std::abs(u) < 1e-2) {
        return 1.0 + u * (-1.0 / 2.0 + u * (1.0 / 24.0 + u * (-1.0 / 720.0 + u / 40320.0)));
    }
    if (lambda > 0.0) return std::cos(std::sqrt(lambda) * t);
    return std::cosh(std::sqrt(-lambda) * t);
}

double cosine_moment(double lambda, double t) {
    const double u = lambda * t * t;
    if (std::abs(u) < 1e-2) {
        // t^2 sum over m of (-u)^m / (2m+2)!
        double s = 1.0 / 2.0 + u * (-1.0 / 24.0 + u * (1.0 / 720.0 + u * (-1.0 / 40320.0)));
        return t * t * s;
    }
    if (lambda > 0.0) return (1.0 - std::cos(std::sqrt(lambda) * t)) / lambda;
    return (1.0 - std::cosh(std::sqrt(-lambda) * t)) / lambda;
}

double sine_integral(double x) {
    if (x < 12.0) {
        double term = x, acc = x;
        for (int m = 1; m < 40; ++m) {
            term *= -x * x / ((2.0 * m) * (2.0 * m + 1.0));
            acc += term / (2.0 * m + 1.0);
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        }
        return acc;
    }
    // asymptotic: Si = pi/2 - f cos x - g sin x
    double x2 = x * x;
    double f = (1.0 - 2.0 / x2 + 24.0 / (x2 * x2) - 720.0 / (x2 * x2 * x2)) / x;
    double g = (1.0 - 6.0 / x2 + 120.0 / (x2 * x2) - 5040.0 / (x2 * x2 * x2)) / x2;
    return 1.5707963267948966 - f * std::cos(x) - g * std::sin(x);
}

}  // namespace halfline
