#pragma once

#include <cstddef>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/wave.hpp"

namespace halfline {

/// One Krein solve (I + c^T) f = sin(sqrt(lambda)(T-t))/sqrt(lambda):
/// the control f^T, the boundary trace y(T, lambda) = f^T(0+), and the
/// verified residual of the discretized system.
struct KreinSolveResult {
    double T;
    double lambda;
    SampledFunction control;
    double boundaryTrace;
    double residual;
};

/// Reconstruction q(T) = lambda + y''(T, lambda)/y(T, lambda) over an
/// interior x grid; endpoints consumed by the differentiation stencil are
/// reported via trimmedLow/high.
struct ReconstructionResult {
    std::vector<double> x;
    std::vector<double> q;
    std::vector<double> lambdaUsed;
    std::vector<double> conditioning;  // h^2 |y''| / |y| per node
    std::size_t trimmedLow = 0;
    std::size_t trimmedHigh = 0;
};

KreinSolveResult krein_solve(const ConnectingKernel& cT, double lambda);

/// y(T, lambda) for every T in Tgrid (independent Krein solves; r must cover
/// [0, 2 max(Tgrid)]).
SampledFunction boundary_trace_curve(const ResponseFunction& r, double lambda,
                                     const Grid1D& Tgrid);

/// Full reconstruction from dynamical data. Per node, the lambda in
/// lambdaSet maximizing |y(T, lambda)| is used (ties: smallest lambda);
/// y'' by a 5-point least-squares parabola.
ReconstructionResult recover_potential(const ResponseFunction& r, const Grid1D& Tgrid,
                                       const std::vector<double>& lambdaSet);

}  // namespace halfline
