#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/potential.hpp"
#include "halfline/scattering.hpp"

namespace halfline {

/// Regular kernel w~(x, -s) of the acoustic control operator
/// (W f)(x) = f(x) + integral_0^x w~(x,-s) f(s) ds, extracted from the
/// simulated fundamental solution with the incident and mirror pulses
/// removed. Needed by the connecting-operator check and the Krein
/// verification hook.
struct AcousticKernel {
    Grid1D xGrid;            // states live on [0, X]
    Grid1D sGrid;            // controls live on [0, S]
    std::vector<double> w;   // w[i * sGrid.count() + j] = w~(x_i, -s_j)

    double at(std::size_t i, std::size_t j) const { return w[i * sGrid.count() + j]; }
};

/// Reflection response of the acoustic scattering system. p holds the
/// regular part on [0, t_max] read along outgoing characteristics ahead of
/// the wall flash; the flash itself carries deltaCoefficient * delta(t)
/// (value -1 under the Dirichlet wall). negTail holds the post-flash
/// continuation p(-h), p(-2h), ... which the S(k) bridge integral needs; the
/// Hankel kernels p(tau+s) only read the t >= 0 branch.
struct AcousticResponse {
    Grid1D tGrid;
    std::vector<double> p;        // regular part on tGrid
    double deltaCoefficient;
    double supportBound;          // a of the potential
    double mollifierWidth;        // finest epsilon used by the simulation
    std::vector<double> negTail;  // negTail[j] = p(-(j+1) h)
    std::optional<AcousticKernel> kernel;

    double t_max() const { return tGrid.stop(); }
    double h() const { return tGrid.step(); }
    double peak() const;
};

struct AcousticSimOptions {
    bool storeKernel = false;
    double kernelSMax = 1.0;       // control horizon covered by the kernel
    double kernelXMax = 0.0;       // 0: auto (kernelSMax + 2a + 1)
    double negTailSpan = -1.0;     // <0: auto (= t_max)
    double dt = 0.0;               // 0: dt = h; dt > h raises CFLViolation
    double domainLength = 0.0;     // 0: auto; a >= L raises SupportViolation
};

/// Bound-state term convention for the phase representation of p.
enum class AcousticBoundTerm { IntegralOnly, Residue, CSquared, CFirst };

/// Time-domain finite-difference solve of the acoustic system (Dirichlet
/// wall, narrow C-infinity incident pulse, exact transparent far boundary at
/// CFL = 1). The delta part of p is split off analytically; the regular part
/// is Richardson-extrapolated over two mollifier widths (8h, 4h).
AcousticResponse simulate_acoustic_response(const PotentialSpec& q, double t_max, double h,
                                            const AcousticSimOptions& opt = {});

/// S(k) = -[deltaCoefficient + integral p(s) e^{-iks} ds], the integral
/// covering [0, t_max] plus the stored post-flash tail.
std::vector<std::complex<double>> scattering_matrix_from_p(const AcousticResponse& p,
                                                           const Grid1D& kGrid);

/// p(t) = sum_j c_j e^{-k_j t}
///        + (1/pi) integral_0^Kmax (cos kt - cos(kt - 2 eta(k))) dk.
/// eta is spline-interpolated from `data` onto a fine quadrature grid, and
/// the cutoff tail is completed with the asymptotic model eta ~ c/k (fitted
/// at the top of the grid), so eta(K_max) <= 0.05 suffices; without the
/// completion eta(K_max) <= 1e-3 is required. PhaseNotDecayed otherwise.
/// c_j: Residue uses -i M(-i k_j)/Mdot(i k_j) (computed from Jost data),
/// CSquared/CFirst use the printed norming-constant conventions.
AcousticResponse p_from_phase(const PotentialSpec& q, const ScatteringData& data,
                              const Grid1D& tGrid, double K_max,
                              AcousticBoundTerm mode = AcousticBoundTerm::Residue,
                              bool completeTail = true);

/// The simulation's C-infinity mollifier g_eps (unit mass, support [-eps, eps]).
double mollifier_value(double eps, double u);

/// Left: Gram matrix of W on controls over [0, T_c] (states integrated over
/// the kernel's x range). Right: I + Hankel(p). Returns the two matrices.
std::pair<KernelMatrix, KernelMatrix> acoustic_connecting_check(const AcousticResponse& p,
                                                                double T_c, const Grid1D& grid);

/// Nystrom solve of f(tau) + integral_0^{T_c} p(tau+s) f(s) ds = e^{ik tau}.
/// Requires 2 T_c <= t_max. The degenerate free-wall data (deltaCoefficient
/// = -1, p identically 0) raises SingularSystem.
ComplexSampledFunction acoustic_krein_solve(const AcousticResponse& p, double k, double T_c);

/// Apply the discrete control operator W to f (trapezoid in s).
SampledFunction acoustic_apply_W(const AcousticKernel& kernel, const SampledFunction& f);

/// Adjoint W^*: (W^* u)(s) = u(s) + integral w~(x,-s) u(x) dx over the
/// kernel's x range; u given on the kernel's xGrid.
std::vector<std::complex<double>> acoustic_apply_W_adjoint(
    const AcousticKernel& kernel, const std::vector<std::complex<double>>& u);

}  // namespace halfline
