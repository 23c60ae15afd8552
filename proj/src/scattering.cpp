#include "halfline/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "halfline/errors.hpp"
#include "halfline/ode.hpp"
#include "halfline/parallel.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJostTol = 1e-10;

double require_compact_support(const PotentialSpec& q, const char* who) {
    if (!q.has_compact_support())
        throw UnboundedSupport(std::string(who) + ": potential must be compactly supported");
    return q.support_bound();
}

using CState = std::array<std::complex<double>, 2>;
using RState = std::array<double, 2>;

}  // namespace

ComplexSampledFunction jost_solution(const PotentialSpec& q, std::complex<double> k,
                                     const Grid1D& xGrid) {
    const double a = require_compact_support(q, "jost_solution");
    if (k.imag() < -1e-14)
        throw std::invalid_argument("jost_solution: need Im k >= 0");
    if (xGrid.stop() > a + 1e-12)
        throw DomainMismatch("jost_solution: xGrid must lie inside [0, a]");
    const std::complex<double> ik(0.0, 1.0);
    auto rhs = [&](double x, const CState& y) -> CState {
        return {y[1], (q(x) - k * k) * y[0]};
    };
    const std::complex<double> ea = std::exp(ik * k * a);
    CState y = {ea, ik * k * ea};
    std::vector<std::complex<double>> vals(xGrid.count());
    double x = a;
    for (std::size_t idx = xGrid.count(); idx-- > 0;) {
        double target = xGrid.node(idx);
        if (target < x) dp54_integrate(y, x, target, kJostTol, rhs);
        x = target;
        vals[idx] = y[0];
    }
    return ComplexSampledFunction(xGrid, std::move(vals));
}

std::complex<double> jost_function(const PotentialSpec& q, std::complex<double> k) {
    const double a = require_compact_support(q, "jost_function");
    const std::complex<double> ik(0.0, 1.0);
    auto rhs = [&](double x, const CState& y) -> CState {
        return {y[1], (q(x) - k * k) * y[0]};
    };
    const std::complex<double> ea = std::exp(ik * k * a);
    CState y = {ea, ik * k * ea};
    dp54_integrate(y, a, 0.0, kJostTol, rhs);
    return y[0];
}

std::pair<double, double> jost_boundary_imag_axis(const PotentialSpec& q, double kappa) {
    const double a = require_compact_support(q, "jost_boundary_imag_axis");
    auto rhs = [&](double x, const RState& y) -> RState {
        return {y[1], (q(x) + kappa * kappa) * y[0]};
    };
    // e(i kappa, x) = e^{-kappa x} beyond a; scale by e^{+kappa a} to keep the
    // integration well ranged and undo it on return.
    RState y = {1.0, -kappa};
    dp54_integrate(y, a, 0.0, kJostTol, rhs);
    const double scale = std::exp(-kappa * a);
    return {y[0] * scale, y[1] * scale};
}

ScatteringData scattering_matrix(const PotentialSpec& q, const Grid1D& kGrid) {
    require_compact_support(q, "scattering_matrix");
    if (!(kGrid.start() > 0.0))
        throw std::invalid_argument("scattering_matrix: kGrid must be strictly positive");
    const std::size_t n = kGrid.count();
    ScatteringData out{{}, kGrid, std::vector<std::complex<double>>(n),
                       std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    std::vector<std::complex<double>> M(n);
    parallel_for(n, [&](std::size_t i) { M[i] = jost_function(q, kGrid.node(i)); });
    for (std::size_t i = 0; i < n; ++i) {
        double A = std::abs(M[i]);
        if (A < 1e-12)
            throw ZeroJostFunction("scattering_matrix: |M(k)| < 1e-12 at a real grid node");
        out.S[i] = std::conj(M[i]) / M[i];
        out.A[i] = A;
        out.U[i] = 1.0 / (A * A);
        out.eta[i] = std::arg(M[i]);
    }
    // Unwrap the phase, pinning eta -> 0 at the top of the grid (M -> 1).
    for (std::size_t i = 1; i < n; ++i) {
        while (out.eta[i] - out.eta[i - 1] > kPi) out.eta[i] -= 2.0 * kPi;
        while (out.eta[i] - out.eta[i - 1] < -kPi) out.eta[i] += 2.0 * kPi;
    }
    double shift = 2.0 * kPi * std::round(out.eta[n - 1] / (2.0 * kPi));
    if (shift != 0.0)
        for (double& e : out.eta) e -= shift;
    return out;
}

std::vector<BoundState> bound_states(const PotentialSpec& q, double kappaMax) {
    const double a = require_compact_support(q, "bound_states");
    if (!(kappaMax > 0.0))
        throw std::invalid_argument("bound_states: kappaMax must be positive");

    // e(i kappa, 0) is real and ->1-ish as kappa grows; scan for sign changes.
    const std::size_t nScan = 400;
    std::vector<double> kap(nScan + 1), val(nScan + 1);
    const double kapLo = 1e-4;
    for (std::size_t i = 0; i <= nScan; ++i) {
        kap[i] = kapLo + (kappaMax - kapLo) * static_cast<double>(i) / nScan;
        val[i] = jost_boundary_imag_axis(q, kap[i]).first;
    }
    std::vector<BoundState> states;
    for (std::size_t i = 0; i < nScan; ++i) {
        if (val[i] == 0.0) continue;
        if (val[i] * val[i + 1] < 0.0) {
            double lo = kap[i], hi = kap[i + 1];
            double flo = val[i];
            for (int it = 0; it < 60 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = jost_boundary_imag_axis(q, mid).first;
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (fm * flo > 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double kappa = 0.5 * (lo + hi);
            // derivative of e(i kappa, 0) in kappa by central difference as a
            // coarseness guard: two roots inside one scan cell are rejected
            double cell = kap[i + 1] - kap[i];
            if (!states.empty() && std::abs(states.back().kappa - kappa) < cell)
                throw SearchGridTooCoarse("bound_states: two sign changes within one cell");

            // C^{-2} = int_0^a e(i kappa, x)^2 dx + e^{-2 kappa a}/(2 kappa)
            const std::size_t nx = 2001;
            Grid1D xg(0.0, a, nx);
            auto rhs = [&](double x, const RState& y) -> RState {
                return {y[1], (q(x) + kappa * kappa) * y[0]};
            };
            RState y = {1.0, -kappa};
            std::vector<double> e2(nx);
            double x = a;
            double beta = 0.0;
            for (std::size_t idx = nx; idx-- > 0;) {
                double target = xg.node(idx);
                if (target < x) dp54_integrate(y, x, target, kJostTol, rhs);
                x = target;
                double scaled = y[0] * std::exp(-kappa * a);
                e2[idx] = scaled * scaled;
                if (idx == 0) beta = y[1] * std::exp(-kappa * a);
            }
            double inner = integrate(SampledFunction(xg, std::move(e2)));
            double tail = std::exp(-2.0 * kappa * a) / (2.0 * kappa);
            states.push_back({kappa, 1.0 / std::sqrt(inner + tail), beta});
        }
    }
    std::sort(states.begin(), states.end(),
              [](const BoundState& l, const BoundState& r) { return l.kappa > r.kappa; });
    return states;
}

ResponseFunction response_from_scattering(const ScatteringData& data, const Grid1D& tGrid,
                                          BoundStateTerm mode, bool completeTail) {
    if (data.U.empty() || data.U.size() != data.kGrid.count())
        throw IncompleteData("response_from_scattering: continuum data missing");
    if (!(tGrid.start() >= 0.0))
        throw std::invalid_argument("response_from_scattering: tGrid must be nonnegative");
    const std::size_t nk = data.kGrid.count();
    const std::vector<double> wk = quadrature_weights(nk, data.kGrid.step());
    const double Kmax = data.kGrid.stop();

    // asymptotic tail model (U - 1) k ~ c1 / k, fitted over the top decile
    double c1 = 0.0;
    if (completeTail) {
        std::size_t lo = nk - std::max<std::size_t>(nk / 10, 2);
        for (std::size_t j = lo; j < nk; ++j) {
            double k = data.kGrid.node(j);
            c1 += (data.U[j] - 1.0) * k * k;
        }
        c1 /= static_cast<double>(nk - lo);
    }

    std::vector<double> r(tGrid.count(), 0.0);
    parallel_for(tGrid.count(), [&](std::size_t i) {
        double t = tGrid.node(i);
        double cont = 0.0;
        for (std::size_t j = 0; j < nk; ++j) {
            double k = data.kGrid.node(j);
            cont += wk[j] * std::sin(k * t) * (data.U[j] - 1.0) * k;
        }
        if (completeTail) cont += c1 * (kPi / 2.0 - sine_integral(Kmax * t));
        double bound = 0.0;
        for (const auto& b : data.boundStates) {
            if (mode == BoundStateTerm::AsPrinted) {
                bound += b.C * b.C * std::sin(b.kappa * t) / b.kappa;
            } else {
                double mass = b.beta * b.beta * b.C * b.C;
                bound += mass * std::sinh(b.kappa * t) / b.kappa;
            }
        }
        r[i] = bound + 2.0 / kPi * cont;
    });
    return ResponseFunction(tGrid.stop() > 0 ? tGrid.stop() : 1.0,
                            SampledFunction(tGrid, std::move(r)));
}

SampledFunction regular_solution(const PotentialSpec& q, double lambda, const Grid1D& xGrid) {
    auto rhs = [&](double x, const RState& y) -> RState {
        return {y[1], (q(x) - lambda) * y[0]};
    };
    RState y = {0.0, 1.0};
    std::vector<double> vals(xGrid.count());
    double x = 0.0;
    if (xGrid.start() > 0.0) dp54_integrate(y, 0.0, xGrid.start(), kJostTol, rhs);
    x = xGrid.start();
    for (std::size_t i = 0; i < xGrid.count(); ++i) {
        double target = xGrid.node(i);
        if (target > x) dp54_integrate(y, x, target, kJostTol, rhs);
        x = target;
        vals[i] = y[0];
    }
    return SampledFunction(xGrid, std::move(vals));
}

std::pair<double, double> parseval_check(const PotentialSpec& q, const ScatteringData& data,
                                         const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid == g.grid))
        throw DomainMismatch("parseval_check: f and g must share a grid");
    const double lhs = integrate(SampledFunction(
        f.grid, [&] {
            std::vector<double> v(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i] * g[i];
            return v;
        }()));

    // F^s f = int f(x) phi(k, x) dx marched together with the phi ODE on a
    // k-adapted step (phi oscillates at frequency k; the data grid cannot
    // carry that quadrature).
    const double L = f.grid.stop();
    auto transforms = [&](double k) -> std::pair<double, double> {
        using S4 = std::array<double, 4>;
        auto fInterp = [&](double x) { return f.interpolate(x); };
        auto gInterp = [&](double x) { return g.interpolate(x); };
        auto rhsODE = [&](double x, const S4& y) -> S4 {
            double phi = y[0];
            return {y[1], (q(x) - k * k) * phi, fInterp(x) * phi, gInterp(x) * phi};
        };
        S4 y = {0.0, 1.0, 0.0, 0.0};
        auto nsteps = static_cast<std::size_t>(std::ceil(L * std::max(k, 10.0) * 8.0));
        rk4_integrate(y, 0.0, L, nsteps, rhsODE);
        return {y[2], y[3]};
    };

    const std::size_t nk = data.kGrid.count();
    const std::vector<double> wk = quadrature_weights(nk, data.kGrid.step());
    std::vector<double> contrib(nk, 0.0);
    parallel_for(nk, [&](std::size_t j) {
        double k = data.kGrid.node(j);
        auto [Ff, Fg] = transforms(k);
        contrib[j] = wk[j] * Ff * Fg * data.U[j] * k * k;
    });
    double rhs = 0.0;
    for (double c : contrib) rhs += c;
    rhs *= 2.0 / kPi;
    const std::vector<double> wx = quadrature_weights(f.size(), f.grid.step());
    for (const auto& b : data.boundStates) {
        // e(i kappa, x) on the f grid (smooth, so the grid quadrature is
        // adequate); scaled backward integration as in bound_states, exact
        // exponential beyond the support.
        auto rhsODE = [&](double x, const RState& y) -> RState {
            return {y[1], (q(x) + b.kappa * b.kappa) * y[0]};
        };
        const double a = q.support_bound();
        RState y = {1.0, -b.kappa};
        double x = a;
        std::vector<double> ev(f.size());
        for (std::size_t idx = f.size(); idx-- > 0;) {
            double target = f.grid.node(idx);
            if (target > a) {
                ev[idx] = std::exp(-b.kappa * (target - a));
                continue;
            }
            if (target < x) dp54_integrate(y, x, target, kJostTol, rhsODE);
            x = target;
            ev[idx] = y[0];
        }
        for (double& v : ev) v *= std::exp(-b.kappa * a);
        double Ff = 0.0, Fg = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            Ff += wx[i] * f[i] * ev[i];
            Fg += wx[i] * g[i] * ev[i];
        }
        rhs += b.C * b.C * Ff * Fg;
    }
    return {lhs, rhs};
}

}  // namespace halfline
