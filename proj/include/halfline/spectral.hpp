#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/potential.hpp"
#include "halfline/wave.hpp"

namespace halfline {

enum class BoundaryCondition { Dirichlet, Neumann };

/// Eigenvalues and norming weights of -phi'' + q phi = lambda phi on [0, T],
/// phi(0) = 0, with the chosen condition at T. normingWeight = 1/||phi||^2
/// for phi normalized by phi'(0) = 1.
struct EigenData {
    double T;
    BoundaryCondition bcAtT;
    std::vector<double> lambda;
    std::vector<double> normingWeight;

    std::size_t size() const { return lambda.size(); }
};

/// Signed atomic measure sigma = rho_d - rho_0 (interleaved +/- atoms).
struct RegularizedSpectralMeasure {
    struct Atom {
        double lambda;
        double weight;
        int sign;  // +1 for rho_d, -1 for rho_0
    };
    std::vector<Atom> atoms;
    double truncationT;  // interval length T the measure was built at
    std::string tag;     // "sigma_d" or "sigma_custom"

    std::size_t size() const { return atoms.size(); }
};

/// First N eigenvalues/weights by scaled Prufer shooting: brackets from the
/// oscillation count (no eigenvalue can be skipped), bisection, then secant
/// refinement to 1e-10 relative.
EigenData dirichlet_eigendata(const PotentialSpec& q, double T, BoundaryCondition bcAtT,
                              std::size_t N);

/// Analytic eigendata for q = 0 (the rho_0 reference): lambda_n = (n pi/T)^2
/// Dirichlet, ((n-1/2) pi/T)^2 Neumann; weights 2 lambda_n / T.
EigenData free_reference_eigendata(double T, BoundaryCondition bcAtT, std::size_t N);

/// sigma_d = rho_d - rho_0 as interleaved signed atoms. Both inputs must
/// share T, boundary condition and truncation level.
RegularizedSpectralMeasure build_sigma_d(const EigenData& perturbed, const EigenData& reference);

/// r(t) = sum over atoms of sign * weight * sine_kernel(lambda, t).
/// Valid for t in [0, 2T]; raw samples oscillate under truncation (the
/// integrated objects converge).
ResponseFunction response_from_sigma(const RegularizedSpectralMeasure& sigma,
                                     const Grid1D& tGrid);

/// c^T(t,s) = sum sign * weight * s(lambda, T-t) s(lambda, T-s).
ConnectingKernel connecting_kernel_from_sigma(const RegularizedSpectralMeasure& sigma, double T,
                                              const Grid1D& grid);

/// Partial sums Psi_n(t,s) over increasing atom counts (convergence
/// diagnostic toward c^T(t,s)).
std::vector<double> levitan_partial_sums(const RegularizedSpectralMeasure& sigma, double T,
                                         double t, double s,
                                         const std::vector<std::size_t>& nLevels);

/// Phi(t) = integral_0^t r; cumulative trapezoid on tGrid.
SampledFunction krein_Phi(const ResponseFunction& r, const Grid1D& tGrid);

/// Phi(t) term-wise from the measure: sum sign * weight * (1 - cos(sqrt(
/// lambda) t))/lambda. The truncated atom sum for r itself converges only in
/// the averaged sense; this integrated form converges on [0, 2T).
SampledFunction phi_from_sigma(const RegularizedSpectralMeasure& sigma, const Grid1D& tGrid);

}  // namespace halfline
