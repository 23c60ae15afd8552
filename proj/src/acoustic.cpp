#include "halfline/acoustic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "halfline/errors.hpp"
#include "halfline/fredholm.hpp"
#include "halfline/interp.hpp"
#include "halfline/ode.hpp"
#include "halfline/parallel.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {

namespace {

constexpr double kPi = std::numbers::pi;

// C-infinity unit-mass mollifier of half-width eps, discretely renormalized
// on the simulation lattice so the lattice mass is exactly 1.
struct Mollifier {
    double eps;
    double norm;  // continuum normalization of exp(-1/(1-v^2))

    explicit Mollifier(double e) : eps(e) {
        static const double kMass = [] {
            // integral over [-1, 1] of exp(-1/(1-v^2)), fine Simpson
            const std::size_t n = 20001;
            double s = 0.0, h = 2.0 / (n - 1);
            for (std::size_t i = 0; i < n; ++i) {
                double v = -1.0 + h * static_cast<double>(i);
                double f = std::abs(v) < 1.0 ? std::exp(-1.0 / (1.0 - v * v)) : 0.0;
                double c = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                s += c * f;
            }
            return s * h / 3.0;
        }();
        norm = 1.0 / (kMass * eps);
    }

    double operator()(double u) const {
        double v = u / eps;
        if (std::abs(v) >= 1.0) return 0.0;
        return norm * std::exp(-1.0 / (1.0 - v * v));
    }
};

struct TraceRun {
    std::vector<double> pre;   // mollified regular p at xi = 0, h, 2h, ...
    std::vector<double> neg;   // at xi = -h, -2h, ...
    std::vector<double> kernelVals;  // w~(x_i, -s_j), row-major, optional
    std::size_t kernelNx = 0;
    std::size_t kernelNs = 0;
};

// One FD pass at mollifier width eps. CFL = 1 (dt = h) makes transport exact
// on q = 0 stretches, so the flash lands on a sample and the transparent
// boundary update u_N^{n+1} = u_{N-1}^n is exact.
TraceRun run_fd(const PotentialSpec& q, double t_max, double h, double eps, double t_neg,
                bool storeKernel, double sMax, double xMax, const AcousticSimOptions& opt) {
    const double a = q.support_bound();
    const Mollifier g(eps);

    auto snap_up = [&](double x) { return std::ceil(x / h - 1e-9) * h; };
    const double x_c = snap_up(std::max(a + 0.5, storeKernel ? sMax : 0.0) + 2.0 * eps);
    double L = std::max({a + 1.0, t_max - x_c + 0.25, x_c + 2.0 * eps + 0.25,
                         storeKernel ? xMax : 0.0});
    if (opt.domainLength > 0.0) L = opt.domainLength;
    L = snap_up(L);
    if (a >= L) throw SupportViolation("simulate_acoustic_response: support bound >= domain");
    double dt = opt.dt > 0.0 ? opt.dt : h;
    if (dt > h * (1.0 + 1e-12))
        throw CFLViolation("simulate_acoustic_response: time step exceeds h");
    dt = h;  // production scheme runs at the exact-transport step

    const auto Nx = static_cast<std::size_t>(std::llround(L / h));
    const auto ic = static_cast<std::size_t>(std::llround(x_c / h));
    const std::size_t flashN = ic + Nx;  // t index of the flash at the far node
    const auto nNeg = static_cast<std::size_t>(std::llround(t_neg / h));
    const std::size_t Nt = flashN + nNeg + 2;
    const auto nPre = static_cast<std::size_t>(std::llround(t_max / h));
    if (flashN < nPre)
        throw SupportViolation("simulate_acoustic_response: domain too short for t_max");

    std::vector<double> qv(Nx + 1);
    for (std::size_t i = 0; i <= Nx; ++i) qv[i] = q(static_cast<double>(i) * h);

    std::vector<double> uPrev(Nx + 1), uCur(Nx + 1), uNext(Nx + 1);
    for (std::size_t i = 0; i <= Nx; ++i) {
        double x = static_cast<double>(i) * h;
        uCur[i] = g(x - x_c);
        uPrev[i] = g(x - h - x_c);
    }
    uCur[0] = 0.0;
    uPrev[0] = 0.0;

    TraceRun out;
    std::vector<double> trace(Nt + 1, 0.0);
    trace[0] = uCur[Nx];

    std::size_t kNx = 0, kNs = 0;
    if (storeKernel) {
        kNs = static_cast<std::size_t>(std::llround(sMax / h)) + 1;
        kNx = static_cast<std::size_t>(std::llround(std::min(xMax, L) / h)) + 1;
        out.kernelVals.assign(kNx * kNs, 0.0);
        out.kernelNx = kNx;
        out.kernelNs = kNs;
        // snapshot s = x_c (paper time 0 downward); j-th column at t = ic - j
        if (ic + 1 >= kNs) {
            // t index for column j is ic - j; column ic captured at n = 0
        }
    }
    auto maybe_snapshot = [&](std::size_t n, const std::vector<double>& u) {
        if (!storeKernel || n > ic) return;
        std::size_t j = ic - n;
        if (j >= kNs) return;
        for (std::size_t i = 0; i < kNx; ++i) {
            double x = static_cast<double>(i) * h;
            double s = static_cast<double>(j) * h;
            // remove the incident pulse and its Dirichlet image (the delta
            // fronts carry unit amplitude for any smooth q); what remains is
            // the regular kernel w~(x, -s)
            out.kernelVals[i * kNs + j] = u[i] - g(x - s) + g(x + s);
        }
    };
    maybe_snapshot(0, uCur);

    const double dt2 = h * h;
    for (std::size_t n = 1; n <= Nt; ++n) {
        for (std::size_t i = 1; i < Nx; ++i)
            uNext[i] = uCur[i + 1] + uCur[i - 1] - uPrev[i] - dt2 * qv[i] * uCur[i];
        uNext[0] = 0.0;
        uNext[Nx] = uCur[Nx - 1];
        std::swap(uPrev, uCur);
        std::swap(uCur, uNext);
        trace[n] = uCur[Nx];
        maybe_snapshot(n, uCur);
    }

    // p_moll(xi) = trace(flash - xi/h) + g(xi): the analytic mirror flash
    // -g(xi) is removed; what remains is the mollified regular part.
    out.pre.resize(nPre + 1);
    for (std::size_t j = 0; j <= nPre; ++j)
        out.pre[j] = trace[flashN - j] + g(static_cast<double>(j) * h);
    out.neg.resize(nNeg);
    for (std::size_t j = 0; j < nNeg; ++j)
        out.neg[j] = trace[flashN + j + 1] + g(static_cast<double>(j + 1) * h);
    return out;
}

// Least-squares parabola through (idx0 .. idx0+m-1, v[...]) evaluated at t
// (indices in lattice units). Used to rebuild the mollifier-contaminated
// corner band from the clean zone; p is one-sidedly smooth there.
double ls_parabola_eval(const std::vector<double>& v, std::size_t idx0, std::size_t m,
                        double t) {
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (std::size_t r = 0; r < m; ++r) {
        double x = static_cast<double>(idx0 + r);
        double y = v[idx0 + r];
        double x2 = x * x;
        s0 += 1;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        b0 += y;
        b1 += x * y;
        b2 += x2 * y;
    }
    // solve the 3x3 normal equations by Cramer
    double d = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) + s2 * (s1 * s3 - s2 * s2);
    if (std::abs(d) < 1e-300) return v[idx0];
    double c0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) +
                 s2 * (b1 * s3 - b2 * s2)) / d;
    double c1 = (s0 * (b1 * s4 - b2 * s3) - b0 * (s1 * s4 - s2 * s3) +
                 s2 * (s1 * b2 - s2 * b1)) / d;
    double c2 = (s0 * (s2 * b2 - s3 * b1) - s1 * (s1 * b2 - s3 * b0) +
                 s2 * (s1 * b1 - s2 * b0)) / d;
    return c0 + c1 * t + c2 * t * t;
}

}  // namespace

double mollifier_value(double eps, double u) { return Mollifier(eps)(u); }

double AcousticResponse::peak() const {
    double m = 0.0;
    for (double v : p) m = std::max(m, std::abs(v));
    for (double v : negTail) m = std::max(m, std::abs(v));
    return m;
}

AcousticResponse simulate_acoustic_response(const PotentialSpec& q, double t_max, double h,
                                            const AcousticSimOptions& opt) {
    if (!q.has_compact_support())
        throw UnboundedSupport("simulate_acoustic_response: potential must be compact");
    if (!(t_max > 0.0) || !(h > 0.0))
        throw std::invalid_argument("simulate_acoustic_response: need t_max > 0, h > 0");
    const double a = q.support_bound();
    double t_neg = opt.negTailSpan >= 0.0 ? opt.negTailSpan : t_max;
    double sMax = opt.kernelSMax;
    double xMax = opt.kernelXMax > 0.0 ? opt.kernelXMax : sMax + 2.0 * a + 1.0;

    const double epsFine = 4.0 * h, epsCoarse = 8.0 * h;
    TraceRun fine = run_fd(q, t_max, h, epsFine, t_neg, opt.storeKernel, sMax, xMax, opt);
    TraceRun coarse = run_fd(q, t_max, h, epsCoarse, t_neg, false, sMax, xMax, opt);

    // Richardson in the mollifier width removes the eps^2 smoothing bias.
    std::vector<double> p(fine.pre.size()), neg(fine.neg.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        p[j] = (4.0 * fine.pre[j] - coarse.pre[j]) / 3.0;
    for (std::size_t j = 0; j < neg.size(); ++j)
        neg[j] = (4.0 * fine.neg[j] - coarse.neg[j]) / 3.0;

    // The band |xi| < epsCoarse mixes the two sides of the flash; rebuild it
    // from the clean zone by one-sided extrapolation.
    const auto band = static_cast<std::size_t>(std::llround(epsCoarse / h));
    const std::size_t fitLen = 2 * band + 1;
    if (p.size() > band + fitLen + 1) {
        for (std::size_t j = 0; j < band; ++j)
            p[j] = ls_parabola_eval(p, band, fitLen, static_cast<double>(j));
    }
    if (neg.size() > band + fitLen + 1) {
        for (std::size_t j = 0; j < band; ++j)
            neg[j] = ls_parabola_eval(neg, band, fitLen, static_cast<double>(j));
    }

    AcousticResponse out{
        Grid1D(0.0, t_max, p.size()), std::move(p), -1.0, a, epsFine, std::move(neg), {}};
    if (opt.storeKernel) {
        AcousticKernel k{Grid1D(0.0, static_cast<double>(fine.kernelNx - 1) * h, fine.kernelNx),
                         Grid1D(0.0, static_cast<double>(fine.kernelNs - 1) * h, fine.kernelNs),
                         std::move(fine.kernelVals)};
        out.kernel = std::move(k);
    }
    return out;
}

std::vector<std::complex<double>> scattering_matrix_from_p(const AcousticResponse& p,
                                                           const Grid1D& kGrid) {
    const double peak = p.peak();
    const std::size_t n = p.p.size();
    if (peak > 0.0) {
        double tailTop = 0.0;
        for (std::size_t j = n > 5 ? n - 5 : 0; j < n; ++j)
            tailTop = std::max(tailTop, std::abs(p.p[j]));
        if (!p.negTail.empty()) {
            for (std::size_t j = p.negTail.size() > 5 ? p.negTail.size() - 5 : 0;
                 j < p.negTail.size(); ++j)
                tailTop = std::max(tailTop, std::abs(p.negTail[j]));
        }
        if (tailTop > 1e-4 * peak)
            throw InsufficientDecay("scattering_matrix_from_p: p has not decayed to 1e-4 of "
                                    "its peak inside the record");
    }
    const double h = p.h();
    // one-sided limits at the flash: extrapolate the negative branch to 0-
    double p0neg = p.negTail.empty() ? 0.0
                                     : ls_parabola_eval(p.negTail, 0,
                                                        std::min<std::size_t>(9, p.negTail.size()),
                                                        -1.0);
    std::vector<std::complex<double>> S(kGrid.count());
    for (std::size_t i = 0; i < kGrid.count(); ++i) {
        double k = kGrid.node(i);
        std::complex<double> acc(0.0, 0.0);
        // positive branch [0, t_max], trapezoid
        for (std::size_t j = 0; j < n; ++j) {
            double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
            double s = static_cast<double>(j) * h;
            acc += w * p.p[j] * std::exp(std::complex<double>(0.0, -k * s));
        }
        // negative branch [-t_neg, 0], trapezoid with the 0- endpoint value
        if (!p.negTail.empty()) {
            std::size_t m = p.negTail.size();
            acc += 0.5 * h * p0neg;
            for (std::size_t j = 0; j < m; ++j) {
                double w = (j + 1 == m) ? 0.5 * h : h;
                double s = -static_cast<double>(j + 1) * h;
                acc += w * p.negTail[j] * std::exp(std::complex<double>(0.0, -k * s));
            }
        }
        S[i] = -(p.deltaCoefficient + acc);
    }
    return S;
}

AcousticResponse p_from_phase(const PotentialSpec& q, const ScatteringData& data,
                              const Grid1D& tGrid, double K_max, AcousticBoundTerm mode,
                              bool completeTail) {
    if (data.kGrid.stop() < K_max - 1e-9)
        throw PhaseNotDecayed("p_from_phase: eta data does not reach K_max");
    double etaTop = std::abs(data.eta.back());
    if (etaTop > (completeTail ? 0.05 : 1e-3))
        throw PhaseNotDecayed("p_from_phase: |eta(K_max)| too large for the cutoff");

    CubicSpline eta(data.kGrid.nodes(), data.eta);
    const double tTop = std::max(std::abs(tGrid.stop()), 1.0);
    const double dk = std::min(0.05 / tTop, data.kGrid.step());
    const auto nk = static_cast<std::size_t>(std::ceil(K_max / dk));
    const double kLo = data.kGrid.start();

    // asymptotic tail model eta ~ cEta/k over the top decile
    double cEta = 0.0;
    if (completeTail) {
        std::size_t lo = data.kGrid.count() - std::max<std::size_t>(data.kGrid.count() / 10, 2);
        for (std::size_t j = lo; j < data.kGrid.count(); ++j)
            cEta += data.eta[j] * data.kGrid.node(j);
        cEta /= static_cast<double>(data.kGrid.count() - lo);
    }

    std::vector<double> p(tGrid.count(), 0.0);
    parallel_for(tGrid.count(), [&](std::size_t i) {
        double t = tGrid.node(i);
        double acc = 0.0;
        for (std::size_t j = 0; j <= nk; ++j) {
            double k = kLo + (K_max - kLo) * static_cast<double>(j) / nk;
            double e = eta(k);
            double f = std::cos(k * t) - std::cos(k * t - 2.0 * e);
            acc += (j == 0 || j == nk) ? 0.5 * f : f;
        }
        p[i] = acc * (K_max - kLo) / static_cast<double>(nk) / kPi;
        // cos(kt) - cos(kt - 2 eta) ~ 2 eta sin(kt) ~ 2 cEta sin(kt)/k beyond
        if (completeTail)
            p[i] += 2.0 * cEta / kPi * (kPi / 2.0 - sine_integral(K_max * t));
    });

    if (mode != AcousticBoundTerm::IntegralOnly) {
        for (const auto& b : data.boundStates) {
            double c;
            if (mode == AcousticBoundTerm::CSquared) {
                c = b.C * b.C;
            } else if (mode == AcousticBoundTerm::CFirst) {
                c = b.C;
            } else {
                // residue of S at k = i kappa: c = M(-i kappa) / m'(kappa),
                // m(kappa) = e(i kappa, 0) real on the imaginary axis
                const double a = q.support_bound();
                double d = 1e-3 * std::max(1.0, b.kappa);
                double mPlus = jost_boundary_imag_axis(q, b.kappa + d).first;
                double mMinus = jost_boundary_imag_axis(q, b.kappa - d).first;
                double mPrime = (mPlus - mMinus) / (2.0 * d);
                // M(-i kappa): integrate e^{kappa x} data backward, scaled
                auto rhs = [&](double x, const std::array<double, 2>& y) {
                    return std::array<double, 2>{y[1], (q(x) + b.kappa * b.kappa) * y[0]};
                };
                std::array<double, 2> y = {1.0, b.kappa};
                dp54_integrate(y, a, 0.0, 1e-10, rhs);
                double mNeg = y[0] * std::exp(b.kappa * a);
                c = mNeg / mPrime;
            }
            for (std::size_t i = 0; i < tGrid.count(); ++i)
                p[i] += c * std::exp(-b.kappa * tGrid.node(i));
        }
    }
    return AcousticResponse{tGrid, std::move(p), -1.0, q.support_bound(), 0.0, {}, {}};
}

std::pair<KernelMatrix, KernelMatrix> acoustic_connecting_check(const AcousticResponse& p,
                                                                double T_c, const Grid1D& grid) {
    if (!p.kernel)
        throw KernelUnavailable("acoustic_connecting_check: simulation kernel not stored");
    if (T_c > p.t_max() / 2.0 + 1e-12)
        throw std::invalid_argument("acoustic_connecting_check: need T_c <= t_max/2");
    const AcousticKernel& K = *p.kernel;
    const double h = grid.step();
    if (std::abs(h - K.sGrid.step()) > 1e-12 ||
        grid.stop() > K.sGrid.stop() + 1e-12)
        throw DomainMismatch("acoustic_connecting_check: grid must align with kernel s-grid");
    const std::size_t n = grid.count();
    const std::size_t nx = K.xGrid.count();

    // Left: kernel of W^*W - I restricted to [0, T_c]:
    //   w~(s,-s') + w~(s',-s) + int w~(x,-s) w~(x,-s') dx, plus identity.
    KernelMatrix left(grid, grid);
    const std::vector<double> wx = quadrature_weights(nx, K.xGrid.step());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t jp = j; jp < n; ++jp) {
            double cross = K.at(j, jp) + K.at(jp, j);
            double quad = 0.0;
            for (std::size_t i = 0; i < nx; ++i) quad += wx[i] * K.at(i, j) * K.at(i, jp);
            double v = cross + quad + (j == jp ? 1.0 : 0.0);
            left(j, jp) = v;
            left(jp, j) = v;
        }

    // Right: I + p(s + s').
    KernelMatrix right(grid, grid);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t jp = 0; jp < n; ++jp)
            right(j, jp) = (j == jp ? 1.0 : 0.0) + p.p[j + jp];
    return {std::move(left), std::move(right)};
}

ComplexSampledFunction acoustic_krein_solve(const AcousticResponse& p, double k, double T_c) {
    const double h = p.h();
    if (2.0 * T_c > p.t_max() + 1e-12)
        throw TruncationTooShort("acoustic_krein_solve: kernel needs p up to 2 T_c <= t_max");
    if (std::abs(1.0 + p.deltaCoefficient) < 1e-6 && p.peak() < 1e-8)
        throw SingularSystem("acoustic_krein_solve: degenerate free Dirichlet data "
                             "(p = -delta); the special control problem is singular");
    const auto N = static_cast<std::size_t>(std::llround(T_c / h));
    Grid1D g(0.0, T_c, N + 1);
    KernelMatrix K(g, g);
    for (std::size_t i = 0; i <= N; ++i)
        for (std::size_t j = 0; j <= N; ++j) K(i, j) = p.p[i + j];
    std::vector<std::complex<double>> rhs(N + 1);
    for (std::size_t i = 0; i <= N; ++i)
        rhs[i] = std::exp(std::complex<double>(0.0, k * g.node(i)));
    return solve_fredholm2(K, ComplexSampledFunction(g, std::move(rhs)),
                           quadrature_weights(N + 1, h));
}

SampledFunction acoustic_apply_W(const AcousticKernel& kernel, const SampledFunction& f) {
    const double h = kernel.sGrid.step();
    if (std::abs(f.grid.step() - h) > 1e-12)
        throw DomainMismatch("acoustic_apply_W: control grid must match kernel s-grid");
    const std::size_t ns = std::min(f.size(), kernel.sGrid.count());
    const std::size_t nx = kernel.xGrid.count();
    std::vector<double> out(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < ns; ++j) {
            double w = (j == 0 || j + 1 == ns) ? 0.5 * h : h;
            acc += w * kernel.at(i, j) * f[j];
        }
        double fi = i < f.size() ? f[i] : 0.0;
        out[i] = fi + acc;
    }
    return SampledFunction(kernel.xGrid, std::move(out));
}

std::vector<std::complex<double>> acoustic_apply_W_adjoint(
    const AcousticKernel& kernel, const std::vector<std::complex<double>>& u) {
    const std::size_t nx = kernel.xGrid.count();
    const std::size_t ns = kernel.sGrid.count();
    if (u.size() != nx)
        throw DomainMismatch("acoustic_apply_W_adjoint: state must live on the kernel x-grid");
    const std::vector<double> wx = quadrature_weights(nx, kernel.xGrid.step());
    std::vector<std::complex<double>> out(ns);
    for (std::size_t j = 0; j < ns; ++j) {
        std::complex<double> acc = u[j];
        for (std::size_t i = 0; i < nx; ++i) acc += wx[i] * kernel.at(i, j) * u[i];
        out[j] = acc;
    }
    return out;
}

}  // namespace halfline
