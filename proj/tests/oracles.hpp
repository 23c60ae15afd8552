#pragma once

// Test-side oracles, independent of the library implementation paths they
// check: Bessel series, a direct finite-difference initial-boundary-value
// wave solve, a plain RK4 ODE integrator, and a Sturm-count tridiagonal
// eigenvalue search.

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// J1 by power series (plenty for |z| <= 10), libstdc++ beyond.
inline double bessel_j1(double z) {
    if (std::abs(z) > 10.0) return std::cyl_bessel_j(1.0, std::abs(z)) * (z < 0 ? -1.0 : 1.0);
    double half = 0.5 * z;
    double term = half;  // m = 0: (z/2)^{2m+1} / (m! (m+1)!)
    double acc = term;
    for (int m = 1; m < 40; ++m) {
        term *= -(half * half) / (static_cast<double>(m) * (m + 1.0));
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

// r(t) for q = c: -sqrt(c) J1(sqrt(c) t)/t, limit -c/2 at t = 0.
inline double response_constant_q(double c, double t) {
    double rc = std::sqrt(c);
    if (std::abs(rc * t) < 1e-8) return -c / 2.0;
    return -rc * bessel_j1(rc * t) / t;
}

// Phi(t) = integral_0^t r for q = 1, fine Simpson on the Bessel form.
inline double phi_constant_one(double t) {
    if (t <= 0.0) return 0.0;
    const int n = 4000;  // even
    double h = t / n;
    double acc = response_constant_q(1.0, 0.0) + response_constant_q(1.0, t);
    for (int i = 1; i < n; ++i)
        acc += (i % 2 == 1 ? 4.0 : 2.0) * response_constant_q(1.0, i * h);
    return acc * h / 3.0;
}

// Direct FD solve of u_tt - u_xx + q u = 0, u(0,t) = f(t), zero initial
// data; returns u_x(0, t_j) on the requested uniform t grid (step ht).
// The domain [0, X] with X >= T + margin keeps the far end causally inert.
inline std::vector<double> fd_boundary_flux(const std::function<double(double)>& q,
                                            const std::function<double(double)>& f, double T,
                                            double ht) {
    const double dx = ht;           // CFL = 1 on the oracle grid too
    const double X = T + 10 * dx;
    const auto nx = static_cast<std::size_t>(std::ceil(X / dx));
    const auto nt = static_cast<std::size_t>(std::llround(T / ht));
    std::vector<double> qv(nx + 1);
    for (std::size_t i = 0; i <= nx; ++i) qv[i] = q(i * dx);
    std::vector<double> up(nx + 1, 0.0), uc(nx + 1, 0.0), un(nx + 1, 0.0);
    std::vector<double> flux(nt + 1, 0.0);
    uc[0] = f(0.0);
    flux[0] = (-3.0 * uc[0] + 4.0 * uc[1] - uc[2]) / (2.0 * dx);
    for (std::size_t n = 1; n <= nt; ++n) {
        double t = n * ht;
        for (std::size_t i = 1; i < nx; ++i)
            un[i] = uc[i + 1] + uc[i - 1] - up[i] - ht * ht * qv[i] * uc[i];
        un[0] = f(t);
        un[nx] = 0.0;
        std::swap(up, uc);
        std::swap(uc, un);
        flux[n] = (-3.0 * uc[0] + 4.0 * uc[1] - uc[2]) / (2.0 * dx);
    }
    return flux;
}

// Plain RK4 for -y'' + q y = lambda y with y(0) = y0, y'(0) = yp0; returns
// y at the nodes of a uniform grid over [0, X] (count nodes).
inline std::vector<double> ode_solution(const std::function<double(double)>& q, double lambda,
                                        double y0, double yp0, double X, std::size_t count,
                                        std::size_t substeps = 64) {
    std::vector<double> out(count);
    double y = y0, yp = yp0;
    out[0] = y;
    double H = X / static_cast<double>(count - 1);
    double h = H / static_cast<double>(substeps);
    for (std::size_t i = 1; i < count; ++i) {
        double x = (i - 1) * H;
        for (std::size_t s = 0; s < substeps; ++s) {
            double xs = x + s * h;
            auto acc = [&](double xx, double yy) { return (q(xx) - lambda) * yy; };
            double k1y = yp, k1p = acc(xs, y);
            double k2y = yp + 0.5 * h * k1p, k2p = acc(xs + 0.5 * h, y + 0.5 * h * k1y);
            double k3y = yp + 0.5 * h * k2p, k3p = acc(xs + 0.5 * h, y + 0.5 * h * k2y);
            double k4y = yp + h * k3p, k4p = acc(xs + h, y + h * k3y);
            y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
            yp += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
        }
        out[i] = y;
    }
    return out;
}

// Lowest Dirichlet eigenvalue of -phi'' + q phi on [0, X] by Sturm-count
// bisection on the standard second-order FD matrix.
inline double fd_lowest_eigenvalue(const std::function<double(double)>& q, double X,
                                   std::size_t n) {
    const double h = X / static_cast<double>(n);
    std::vector<double> diag(n - 1), qv(n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        qv[i] = q((i + 1) * h);
        diag[i] = 2.0 / (h * h) + qv[i];
    }
    const double off = -1.0 / (h * h);
    auto count_below = [&](double sigma) {
        std::size_t cnt = 0;
        double d = diag[0] - sigma;
        if (d < 0) ++cnt;
        for (std::size_t i = 1; i < n - 1; ++i) {
            d = (diag[i] - sigma) - off * off / d;
            if (d < 0) ++cnt;
        }
        return cnt;
    };
    double lo = -1e3, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (count_below(mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracles
