#include "halfline/wave.hpp"

#include <cmath>
#include <stdexcept>

#include "halfline/errors.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {

namespace {

std::size_t steps_on(double T, double h, const char* who) {
    double ratio = T / h;
    auto n = static_cast<std::size_t>(std::llround(ratio));
    if (n == 0 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument(std::string(who) + ": h must divide T");
    return n;
}

void require_step_match(double ha, double hb, const char* who) {
    if (std::abs(ha - hb) > 1e-12 * std::max(ha, hb))
        throw DomainMismatch(std::string(who) + ": grid steps do not match");
}

}  // namespace

GoursatKernel::GoursatKernel(double T, double h, std::size_t latticeSize)
    : T_(T), h_(h), nNodes_(latticeSize), latticeN_(2 * (latticeSize - 1) + 1) {
    const std::size_t N = nNodes_ - 1;
    w_.assign((N + 1) * (N + 1), 0.0);
}

std::size_t GoursatKernel::idx(std::size_t i, std::size_t j) const {
    // Row j holds xi-indices i = j .. 2N - j; offsets telescope to j(2N+2-j).
    const std::size_t twoN = latticeN_ - 1;
    return j * (twoN + 2 - j) + (i - j);
}

double GoursatKernel::at(std::size_t m, std::size_t n) const {
    if (m > n || n >= nNodes_)
        throw std::out_of_range("GoursatKernel::at: need 0 <= m <= n < node_count");
    return lattice(m + n, n - m);
}

GoursatKernel solve_goursat(const PotentialSpec& q, double T, double h) {
    if (!(T > 0.0)) throw std::invalid_argument("solve_goursat: T must be positive");
    const std::size_t N = steps_on(T, h, "solve_goursat");
    GoursatKernel w(T, h, N + 1);
    const std::size_t twoN = 2 * N;

    // q at half-step abscissas x = i*h/2 and the cumulative integral of q.
    std::vector<double> qh(twoN + 1), cumq(twoN + 1, 0.0);
    for (std::size_t i = 0; i <= twoN; ++i) {
        qh[i] = q(static_cast<double>(i) * h / 2.0);
        if (!std::isfinite(qh[i]))
            throw std::invalid_argument("solve_goursat: potential sample is not finite");
        if (i > 0) cumq[i] = cumq[i - 1] + 0.25 * h * (qh[i - 1] + qh[i]);
    }

    // Diagonal data w(x,x) on zeta = 0 and zero data on xi = zeta.
    for (std::size_t i = 0; i <= twoN; ++i) w.lattice(i, 0) = -0.5 * cumq[i];

    // Characteristic cell update: 4 w_xi_zeta = -q w, q*w averaged over the
    // four cell corners, implicit in the new corner.
    const double c = h * h / 16.0;
    for (std::size_t j = 1; j <= N; ++j) {
        w.lattice(j, j) = 0.0;
        for (std::size_t i = j + 1; i + j <= twoN; ++i) {
            const double wNW = w.lattice(i - 1, j);
            const double wSE = w.lattice(i, j - 1);
            const double wSW = w.lattice(i - 1, j - 1);
            const double qNE = qh[i - j];
            const double qNW = qh[i - j - 1];
            const double qSE = qh[i - j + 1];
            const double qSW = qNE;
            const double rhs = wNW + wSE - wSW - c * (qNW * wNW + qSE * wSE + qSW * wSW);
            w.lattice(i, j) = rhs / (1.0 + c * qNE);
        }
    }
    return w;
}

ResponseFunction::ResponseFunction(double hor, SampledFunction s)
    : horizon(hor), samples(std::move(s)) {
    if (!(horizon > 0.0)) throw std::invalid_argument("ResponseFunction: horizon must be > 0");
}

ResponseFunction ResponseFunction::zero(double horizon, double h) {
    std::size_t n = steps_on(horizon, h, "ResponseFunction::zero");
    return ResponseFunction(horizon, SampledFunction::zeros(Grid1D(0.0, horizon, n + 1)));
}

ResponseFunction response_from_kernel(const GoursatKernel& w) {
    const std::size_t N = w.node_count() - 1;
    const double h = w.h();
    std::vector<double> r(N + 1, 0.0);
    for (std::size_t n = 2; n <= N; ++n)
        r[n] = (4.0 * w.at(1, n) - w.at(2, n)) / (2.0 * h);
    if (N >= 4) {
        // quadratic extrapolation through nodes 2h, 3h, 4h
        r[0] = 6.0 * r[2] - 8.0 * r[3] + 3.0 * r[4];
        r[1] = 3.0 * r[2] - 3.0 * r[3] + r[4];
    } else if (N >= 2) {
        r[0] = r[2];
        if (N >= 1) r[1] = r[2];
    }
    return ResponseFunction(w.T(), SampledFunction(Grid1D(0.0, w.T(), N + 1), std::move(r)));
}

ResponseFunction response_function(const PotentialSpec& q, double T, double h) {
    return response_from_kernel(solve_goursat(q, 2.0 * T, h));
}

SampledFunction apply_response(const ResponseFunction& r, const SampledFunction& f) {
    const double h = f.grid.step();
    require_step_match(r.h(), h, "apply_response");
    if (f.grid.stop() > r.horizon + 1e-12)
        throw DomainMismatch("apply_response: response horizon shorter than control");
    const std::size_t n = f.size();
    if (n < 3) throw InvalidControl("apply_response: control needs at least 3 nodes");
    const double scale = std::max(1.0, f.max_abs());
    const double fp0 = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    // the one-sided stencil certifies f'(0) only to O(h^2), so the 1e-8
    // contract is checked at grid resolution
    const double tol = std::max(1e-8, 10.0 * h * h) * scale;
    if (std::abs(f[0]) > tol || std::abs(fp0) > tol)
        throw InvalidControl("apply_response: control must satisfy f(0) = f'(0) = 0");

    const auto& rv = r.samples.values;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double fp;
        if (i == 0)
            fp = fp0;
        else if (i + 1 == n)
            fp = (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h);
        else
            fp = (f[i + 1] - f[i - 1]) / (2.0 * h);
        double conv = 0.0;
        if (i >= 1) {
            conv = 0.5 * (rv[0] * f[i] + rv[i] * f[0]);
            for (std::size_t j = 1; j < i; ++j) conv += rv[j] * f[i - j];
            conv *= h;
        }
        out[i] = -fp + conv;
    }
    return SampledFunction(f.grid, std::move(out));
}

SampledFunction apply_control(const GoursatKernel& w, const SampledFunction& f) {
    const std::size_t N = w.node_count() - 1;
    require_step_match(w.h(), f.grid.step(), "apply_control");
    if (f.size() != N + 1)
        throw DomainMismatch("apply_control: control grid must match kernel horizon");
    std::vector<double> out(N + 1, 0.0);
    for (std::size_t m = 0; m <= N; ++m) {
        double acc = f[N - m];
        if (m < N) {
            double s = 0.5 * (w.at(m, m) * f[N - m] + w.at(m, N) * f[0]);
            for (std::size_t nn = m + 1; nn < N; ++nn) s += w.at(m, nn) * f[N - nn];
            acc += s * w.h();
        }
        out[m] = acc;
    }
    return SampledFunction(f.grid, std::move(out));
}

SampledFunction apply_control_adjoint(const GoursatKernel& w, const SampledFunction& u) {
    const std::size_t N = w.node_count() - 1;
    require_step_match(w.h(), u.grid.step(), "apply_control_adjoint");
    if (u.size() != N + 1)
        throw DomainMismatch("apply_control_adjoint: state grid must match kernel horizon");
    std::vector<double> out(N + 1, 0.0);
    for (std::size_t nn = 0; nn <= N; ++nn) {
        const std::size_t s = N - nn;  // integral over x in [0, s*h]
        double acc = u[s];
        if (s >= 1) {
            double sum = 0.5 * (w.at(0, s) * u[0] + w.at(s, s) * u[s]);
            for (std::size_t m = 1; m < s; ++m) sum += w.at(m, s) * u[m];
            acc += sum * w.h();
        }
        out[nn] = acc;
    }
    return SampledFunction(u.grid, std::move(out));
}

ConnectingKernel connecting_kernel(const ResponseFunction& r, double T) {
    const double h = r.h();
    const std::size_t N = steps_on(T, h, "connecting_kernel");
    if (r.horizon < 2.0 * T - 1e-12)
        throw HorizonTooShort("connecting_kernel: response must cover [0, 2T]");
    const auto cum = cumulative_trapezoid(r.samples);
    // p(xi) = (1/2) integral_0^|xi| r, evaluated at exact grid offsets.
    auto p = [&](std::size_t j) { return 0.5 * cum[j]; };
    Grid1D g(0.0, T, N + 1);
    KernelMatrix K(g, g);
    for (std::size_t i = 0; i <= N; ++i)
        for (std::size_t j = 0; j <= N; ++j) {
            std::size_t far = 2 * N - i - j;
            std::size_t near = i > j ? i - j : j - i;
            K(i, j) = p(far) - p(near);
        }
    return ConnectingKernel{T, std::move(K)};
}

}  // namespace halfline
