#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace halfline {

// Small fixed-dimension integrators used throughout: classic RK4 with a fixed
// step and an adaptive Dormand-Prince 5(4) pair. State is std::array<T, N>
// with T = double or std::complex<double>.

template <typename State, typename Rhs>
void rk4_step(State& y, double x, double h, Rhs&& rhs) {
    State k1 = rhs(x, y);
    State y2 = y;
    for (std::size_t i = 0; i < y.size(); ++i) y2[i] = y[i] + 0.5 * h * k1[i];
    State k2 = rhs(x + 0.5 * h, y2);
    for (std::size_t i = 0; i < y.size(); ++i) y2[i] = y[i] + 0.5 * h * k2[i];
    State k3 = rhs(x + 0.5 * h, y2);
    for (std::size_t i = 0; i < y.size(); ++i) y2[i] = y[i] + h * k3[i];
    State k4 = rhs(x + h, y2);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

/// Integrate from x0 to x1 (either direction) with nsteps RK4 steps.
template <typename State, typename Rhs>
void rk4_integrate(State& y, double x0, double x1, std::size_t nsteps, Rhs&& rhs) {
    double h = (x1 - x0) / static_cast<double>(nsteps);
    double x = x0;
    for (std::size_t i = 0; i < nsteps; ++i) {
        rk4_step(y, x, h, rhs);
        x = x0 + static_cast<double>(i + 1) * h;
    }
}

/// Adaptive Dormand-Prince 5(4). Integrates from x0 to x1 (either direction)
/// keeping the local error per step below tol (mixed absolute/relative).
template <typename State, typename Rhs>
void dp54_integrate(State& y, double x0, double x1, double tol, Rhs&& rhs) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double span = x1 - x0;
    if (span == 0.0) return;
    const double dir = span > 0.0 ? 1.0 : -1.0;
    double h = dir * std::min(std::abs(span), std::abs(span) / 16.0 + 1e-6);
    double x = x0;
    std::size_t guard = 0;
    while (dir * (x1 - x) > 0.0) {
        if (++guard > 20'000'000)
            throw std::runtime_error("dp54_integrate: step count exceeded");
        if (dir * (x + h - x1) > 0.0) h = x1 - x;
        State k1 = rhs(x, y), t = y;
        auto axpy = [&](State& out, const State& base) { out = base; };
        (void)axpy;
        for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] + h * a21 * k1[i];
        State k2 = rhs(x + c2 * h, t);
        for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        State k3 = rhs(x + c3 * h, t);
        for (std::size_t i = 0; i < y.size(); ++i)
            t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        State k4 = rhs(x + c4 * h, t);
        for (std::size_t i = 0; i < y.size(); ++i)
            t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        State k5 = rhs(x + c5 * h, t);
        for (std::size_t i = 0; i < y.size(); ++i)
            t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        State k6 = rhs(x + h, t);
        State y5 = y;
        for (std::size_t i = 0; i < y.size(); ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        State k7 = rhs(x + h, y5);

        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            double ei = std::abs(h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                      e6 * k6[i] + e7 * k7[i]));
            err = std::max(err, ei);
            scale = std::max(scale, std::abs(y5[i]));
        }
        double tol_eff = tol * std::max(1.0, scale);
        if (err <= tol_eff) {
            y = y5;
            x += h;
        }
        double factor = err > 0.0 ? 0.9 * std::pow(tol_eff / err, 0.2) : 4.0;
        factor = std::clamp(factor, 0.2, 4.0);
        h *= factor;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(span)))
            throw std::runtime_error("dp54_integrate: step size underflow");
    }
}

}  // namespace halfline
