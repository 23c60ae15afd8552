#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/potential.hpp"
#include "halfline/wave.hpp"

namespace halfline {

/// Bound state: zero of the Jost function at k = i*kappa with the norming
/// constant C, C^{-2} = integral_0^inf e(i kappa, x)^2 dx, and the origin
/// derivative beta = e'(i kappa, 0). The spectral measure carries the atom
/// mass (beta C)^2 (the eigenfunction with phi'(0) = 1 is e/beta).
struct BoundState {
    double kappa;
    double C;
    double beta = 1.0;
};

/// Scattering data on a positive k grid: S(k) = M(-k)/M(k) with M(k) = e(k,0),
/// amplitude A = |M|, unwrapped phase eta = arg M (eta -> 0 as k -> inf),
/// and the Parseval weight U = 1/A^2.
struct ScatteringData {
    std::vector<BoundState> boundStates;  // kappa_1 > kappa_2 > ...
    Grid1D kGrid;
    std::vector<std::complex<double>> S;
    std::vector<double> eta;
    std::vector<double> A;
    std::vector<double> U;
};

enum class BoundStateTerm { AsPrinted, MeasureConsistent };

/// Jost solution e(k, .) on xGrid (subset of [0, a]), integrated backward
/// from x = a with e(a) = e^{ika}, e'(a) = ik e^{ika}; adaptive DP5(4) with
/// local tolerance 1e-10.
ComplexSampledFunction jost_solution(const PotentialSpec& q, std::complex<double> k,
                                     const Grid1D& xGrid);

/// Jost function M(k) = e(k, 0).
std::complex<double> jost_function(const PotentialSpec& q, std::complex<double> k);

/// e(i kappa, 0) and e'(i kappa, 0), real arithmetic (real q, imaginary k).
std::pair<double, double> jost_boundary_imag_axis(const PotentialSpec& q, double kappa);

/// S, eta, A, U over kGrid (bound states left empty).
ScatteringData scattering_matrix(const PotentialSpec& q, const Grid1D& kGrid);

/// All zeros of e(i kappa, 0) in (0, kappaMax): sign-change scan on a fine
/// kappa grid plus bisection; norming constants with the exact exponential
/// tail beyond x = a.
std::vector<BoundState> bound_states(const PotentialSpec& q, double kappaMax);

/// r(t) = bound-state sum + (2/pi) integral_0^Kmax sin(kt)(U(k)-1) k dk.
/// AsPrinted uses C_j^2 sin(k_j t)/k_j; MeasureConsistent pushes the
/// lambda_j = -k_j^2 atom of the spectral measure through the sine
/// representation, (beta_j C_j)^2 sinh(k_j t)/k_j. The truncated continuum
/// integral is completed with its asymptotic tail c1/k (c1 fitted from the
/// top of the k grid), which removes the O(1/(K_max t)) cutoff ringing;
/// completeTail = false keeps the raw truncation.
ResponseFunction response_from_scattering(const ScatteringData& data, const Grid1D& tGrid,
                                          BoundStateTerm mode, bool completeTail = true);

/// lhs = integral f g; rhs = bound-state sum + continuum Parseval integral.
std::pair<double, double> parseval_check(const PotentialSpec& q, const ScatteringData& data,
                                         const SampledFunction& f, const SampledFunction& g);

/// Regular solution phi(k, .) with phi(0) = 0, phi'(0) = 1 on xGrid (k real
/// or the value lambda = k^2 real); used by the Parseval transform and the
/// transformation-operator checks.
SampledFunction regular_solution(const PotentialSpec& q, double lambda, const Grid1D& xGrid);

}  // namespace halfline
