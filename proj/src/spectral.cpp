#include "halfline/spectral.hpp"

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

// Scaled Prufer phase for -u'' + q u = lambda u, u = (rho/sqrt(S)) sin(theta),
// u' = rho sqrt(S) cos(theta):
//   theta'  = S + B(x) sin^2(theta),        B = (lambda - S^2 - q(x)) / S
//   nu'     = B sin(2 theta) nu + sin^2(theta)/S        (nu = d theta/d lambda)
//   logrho' = -(B/2) sin(2 theta)
// S is held fixed across one eigenvalue search so theta(T; lambda) is strictly
// increasing in lambda and bisection brackets cannot lose a root.
struct PruferRun {
    double thetaT;
    double nuT;
    double logRhoT;
};

class PruferIntegrator {
public:
    PruferIntegrator(const PotentialSpec& q, double T) : q_(q), T_(T) {}

    // q tabulated at the half-step lattice of an nsteps RK4 run.
    const std::vector<double>& table(std::size_t nsteps) {
        if (nsteps != tabSteps_) {
            tabSteps_ = nsteps;
            tab_.resize(2 * nsteps + 1);
            double dx = T_ / static_cast<double>(nsteps) / 2.0;
            for (std::size_t i = 0; i < tab_.size(); ++i)
                tab_[i] = q_(std::min(static_cast<double>(i) * dx, T_));
        }
        return tab_;
    }

    PruferRun run(double lambda, double S, std::size_t nsteps, bool withAux) {
        const auto& qt = table(nsteps);
        const double h = T_ / static_cast<double>(nsteps);
        double theta = 0.0, nu = 0.0, logrho = 0.0;
        for (std::size_t i = 0; i < nsteps; ++i) {
            // classic RK4 with the tabulated q at x, x+h/2, x+h
            const double q0 = qt[2 * i], q1 = qt[2 * i + 1], q2 = qt[2 * i + 2];
            auto f = [&](double qv, double th) { return S + (lambda - S * S - qv) / S *
                                                             std::sin(th) * std::sin(th); };
            double k1 = f(q0, theta);
            double k2 = f(q1, theta + 0.5 * h * k1);
            double k3 = f(q1, theta + 0.5 * h * k2);
            double k4 = f(q2, theta + h * k3);
            if (withAux) {
                auto g = [&](double qv, double th, double nuv) {
                    double B = (lambda - S * S - qv) / S;
                    double s2 = std::sin(2.0 * th);
                    double sn = std::sin(th);
                    return B * s2 * nuv + sn * sn / S;
                };
                auto r = [&](double qv, double th) {
                    double B = (lambda - S * S - qv) / S;
                    return -0.5 * B * std::sin(2.0 * th);
                };
                double n1 = g(q0, theta, nu);
                double r1 = r(q0, theta);
                double n2 = g(q1, theta + 0.5 * h * k1, nu + 0.5 * h * n1);
                double r2 = r(q1, theta + 0.5 * h * k1);
                double n3 = g(q1, theta + 0.5 * h * k2, nu + 0.5 * h * n2);
                double r3 = r(q1, theta + 0.5 * h * k2);
                double n4 = g(q2, theta + h * k3, nu + h * n3);
                double r4 = r(q2, theta + h * k3);
                nu += h / 6.0 * (n1 + 2.0 * n2 + 2.0 * n3 + n4);
                logrho += h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
            }
            theta += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return {theta, nu, logrho};
    }

private:
    const PotentialSpec& q_;
    double T_;
    std::size_t tabSteps_ = 0;
    std::vector<double> tab_;
};

struct QStats {
    double mean;
    double maxDev;  // max |q - mean|
    double lo;      // mean - min q
    double hi;      // max q - mean
};

QStats q_stats(const PotentialSpec& q, double T) {
    const std::size_t n = 2048;
    double sum = 0.0, qmin = q(0.0), qmax = qmin;
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        v[i] = q(T * static_cast<double>(i) / n);
        qmin = std::min(qmin, v[i]);
        qmax = std::max(qmax, v[i]);
        sum += (i == 0 || i == n) ? 0.5 * v[i] : v[i];
    }
    double mean = sum / static_cast<double>(n);
    return {mean, std::max(qmax - mean, mean - qmin), mean - qmin, qmax - mean};
}

std::size_t search_steps(double S, double T, double maxDev) {
    // RK4 step limit: phase error from the oscillatory B sin^2(theta) term
    // must stay below the 1e-10-relative eigenvalue target.
    double sh = 0.35;
    if (maxDev > 1e-12) {
        sh = std::pow(3.8e-8 * S * S / maxDev, 0.25);
        sh = std::clamp(sh, 0.02, 0.35);
    }
    auto n = static_cast<std::size_t>(std::ceil(S * T / sh));
    return std::max<std::size_t>(n, 256);
}

}  // namespace

EigenData dirichlet_eigendata(const PotentialSpec& q, double T, BoundaryCondition bcAtT,
                              std::size_t N) {
    if (!(T > 0.0)) throw std::invalid_argument("dirichlet_eigendata: T must be positive");
    if (N < 1) throw std::invalid_argument("dirichlet_eigendata: N must be >= 1");

    const QStats st = q_stats(q, T);
    EigenData out;
    out.T = T;
    out.bcAtT = bcAtT;
    out.lambda.resize(N);
    out.normingWeight.resize(N);

    PruferIntegrator integ(q, T);
    for (std::size_t n = 1; n <= N; ++n) {
        const double target =
            bcAtT == BoundaryCondition::Dirichlet ? kPi * static_cast<double>(n)
                                                  : kPi * (static_cast<double>(n) - 0.5);
        const double guess = (target / T) * (target / T) + st.mean;
        const double S = std::sqrt(std::max(guess - st.mean, 1.0));
        const std::size_t ns = search_steps(S, T, st.maxDev);

        double lo = guess - st.lo - 1.0;
        double hi = guess + st.hi + 1.0;
        double thLo = integ.run(lo, S, ns, false).thetaT;
        double thHi = integ.run(hi, S, ns, false).thetaT;
        std::size_t expand = 0;
        while (thLo >= target) {
            lo -= std::max(1.0, 0.5 * (hi - lo));
            thLo = integ.run(lo, S, ns, false).thetaT;
            if (++expand > 60)
                throw ConvergenceFailure("dirichlet_eigendata: cannot bracket from below");
        }
        while (thHi < target) {
            hi += std::max(1.0, 0.5 * (hi - lo));
            thHi = integ.run(hi, S, ns, false).thetaT;
            if (++expand > 60)
                throw ConvergenceFailure("dirichlet_eigendata: cannot bracket from above");
        }

        // Bisection narrows the bracket, then secant (clipped to the bracket)
        // polishes; theta(T; lambda) is strictly increasing in lambda.
        double a = lo, fa = thLo - target;
        double b = hi, fb = thHi - target;
        for (int it = 0; it < 12 && (b - a) > 1e-6 * std::max(1.0, std::abs(b)); ++it) {
            double m = 0.5 * (a + b);
            double fm = integ.run(m, S, ns, false).thetaT - target;
            if (fm < 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        double x0 = a, f0 = fa, x1 = b, f1 = fb;
        std::size_t it = 0;
        while ((b - a) > 1e-11 * std::max(1.0, std::abs(b)) && std::abs(f1) > 1e-12) {
            double x2;
            if (std::abs(f1 - f0) > 1e-300) {
                x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
                if (!(x2 > a && x2 < b)) x2 = 0.5 * (a + b);
            } else {
                x2 = 0.5 * (a + b);
            }
            double f2 = integ.run(x2, S, ns, false).thetaT - target;
            if (f2 < 0.0) {
                a = x2;
                fa = f2;
            } else {
                b = x2;
                fb = f2;
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f2;
            if (++it > 80)
                throw ConvergenceFailure("dirichlet_eigendata: refinement did not converge");
        }
        const double lambda = std::abs(f1) <= std::abs(fb) ? x1 : 0.5 * (a + b);

        // Norm via the variational identity ||u||^2 = rho(T)^2 c(theta_T) nu(T)
        // (c = cos^2 at a Dirichlet root, sin^2 at a Neumann root), with
        // rho(0)^2 = 1/S folded in at the end. Two RK4 runs + Richardson.
        auto norm_of = [&](std::size_t nsw) {
            PruferRun r = integ.run(lambda, S, nsw, true);
            double trig = bcAtT == BoundaryCondition::Dirichlet ? std::cos(r.thetaT)
                                                                : std::sin(r.thetaT);
            return (1.0 / S) * std::exp(2.0 * r.logRhoT) * trig * trig * r.nuT;
        };
        auto nsw = static_cast<std::size_t>(std::ceil(S * T / 0.2));
        nsw = std::max<std::size_t>(nsw, 256);
        double nrm = (16.0 * norm_of(2 * nsw) - norm_of(nsw)) / 15.0;
        if (!(nrm > 0.0))
            throw ConvergenceFailure("dirichlet_eigendata: nonpositive norm estimate");
        out.lambda[n - 1] = lambda;
        out.normingWeight[n - 1] = 1.0 / nrm;
    }

    for (std::size_t i = 1; i < N; ++i)
        if (!(out.lambda[i] > out.lambda[i - 1]))
            throw ConvergenceFailure("dirichlet_eigendata: eigenvalues not increasing");
    return out;
}

EigenData free_reference_eigendata(double T, BoundaryCondition bcAtT, std::size_t N) {
    EigenData out;
    out.T = T;
    out.bcAtT = bcAtT;
    out.lambda.resize(N);
    out.normingWeight.resize(N);
    for (std::size_t n = 1; n <= N; ++n) {
        double omega = bcAtT == BoundaryCondition::Dirichlet
                           ? kPi * static_cast<double>(n) / T
                           : kPi * (static_cast<double>(n) - 0.5) / T;
        out.lambda[n - 1] = omega * omega;
        out.normingWeight[n - 1] = 2.0 * omega * omega / T;
    }
    return out;
}

RegularizedSpectralMeasure build_sigma_d(const EigenData& perturbed,
                                         const EigenData& reference) {
    if (std::abs(perturbed.T - reference.T) > 1e-12 * std::max(1.0, perturbed.T) ||
        perturbed.bcAtT != reference.bcAtT || perturbed.size() != reference.size())
        throw MismatchedTruncation("build_sigma_d: perturbed/reference data must share T, "
                                   "boundary condition and truncation level");
    RegularizedSpectralMeasure sigma;
    sigma.truncationT = perturbed.T;
    sigma.tag = "sigma_d";
    sigma.atoms.reserve(2 * perturbed.size());
    for (std::size_t i = 0; i < perturbed.size(); ++i) {
        sigma.atoms.push_back({perturbed.lambda[i], perturbed.normingWeight[i], +1});
        sigma.atoms.push_back({reference.lambda[i], reference.normingWeight[i], -1});
    }
    return sigma;
}

ResponseFunction response_from_sigma(const RegularizedSpectralMeasure& sigma,
                                     const Grid1D& tGrid) {
    if (tGrid.stop() > 2.0 * sigma.truncationT + 1e-12)
        throw HorizonExceeded("response_from_sigma: grid exceeds the [0, 2T] validity window");
    std::vector<double> r(tGrid.count(), 0.0);
    parallel_for(tGrid.count(), [&](std::size_t i) {
        double t = tGrid.node(i);
        double acc = 0.0;
        for (const auto& a : sigma.atoms)
            acc += static_cast<double>(a.sign) * a.weight * sine_kernel(a.lambda, t);
        r[i] = acc;
    });
    return ResponseFunction(tGrid.stop(), SampledFunction(tGrid, std::move(r)));
}

ConnectingKernel connecting_kernel_from_sigma(const RegularizedSpectralMeasure& sigma, double T,
                                              const Grid1D& grid) {
    if (grid.stop() > 2.0 * sigma.truncationT + 1e-12)
        throw HorizonExceeded("connecting_kernel_from_sigma: grid exceeds [0, 2T]");
    const std::size_t n = grid.count();
    KernelMatrix K(grid, grid);
    std::vector<double> sk(n);
    for (const auto& a : sigma.atoms) {
        for (std::size_t i = 0; i < n; ++i) sk[i] = sine_kernel(a.lambda, T - grid.node(i));
        double w = static_cast<double>(a.sign) * a.weight;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) K(i, j) += w * sk[i] * sk[j];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) K(i, j) = K(j, i);
    return ConnectingKernel{T, std::move(K)};
}

std::vector<double> levitan_partial_sums(const RegularizedSpectralMeasure& sigma, double T,
                                         double t, double s,
                                         const std::vector<std::size_t>& nLevels) {
    // Levels count leading atoms in storage order (pairs interleave +/-, so
    // even levels cover whole cancellation pairs).
    std::vector<double> out;
    out.reserve(nLevels.size());
    for (std::size_t level : nLevels) {
        double acc = 0.0;
        std::size_t m = std::min(level, sigma.size());
        for (std::size_t i = 0; i < m; ++i) {
            const auto& a = sigma.atoms[i];
            acc += static_cast<double>(a.sign) * a.weight * sine_kernel(a.lambda, T - t) *
                   sine_kernel(a.lambda, T - s);
        }
        out.push_back(acc);
    }
    return out;
}

SampledFunction phi_from_sigma(const RegularizedSpectralMeasure& sigma, const Grid1D& tGrid) {
    if (tGrid.stop() > 2.0 * sigma.truncationT + 1e-12)
        throw HorizonExceeded("phi_from_sigma: grid exceeds the [0, 2T] validity window");
    std::vector<double> phi(tGrid.count(), 0.0);
    parallel_for(tGrid.count(), [&](std::size_t i) {
        double t = tGrid.node(i);
        double acc = 0.0;
        for (const auto& a : sigma.atoms)
            acc += static_cast<double>(a.sign) * a.weight * cosine_moment(a.lambda, t);
        phi[i] = acc;
    });
    return SampledFunction(tGrid, std::move(phi));
}

SampledFunction krein_Phi(const ResponseFunction& r, const Grid1D& tGrid) {
    if (tGrid.stop() > r.horizon + 1e-12)
        throw HorizonExceeded("krein_Phi: grid exceeds the response horizon");
    SampledFunction rs = SampledFunction::sample(tGrid, [&](double t) { return r(t); });
    std::vector<double> phi = cumulative_trapezoid(rs);
    // integral from 0, not from tGrid.start()
    if (tGrid.start() > 0.0) {
        std::size_t lead = static_cast<std::size_t>(std::ceil(tGrid.start() / tGrid.step()));
        Grid1D gl(0.0, tGrid.start(), std::max<std::size_t>(lead, 1) + 1);
        SampledFunction rl = SampledFunction::sample(gl, [&](double t) { return r(t); });
        double base = integrate(rl);
        for (double& v : phi) v += base;
    }
    return SampledFunction(tGrid, std::move(phi));
}

}  // namespace halfline
