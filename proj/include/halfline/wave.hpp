#pragma once

#include <cstddef>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/potential.hpp"

namespace halfline {

/// Kernel w(x, s) of the boundary-controlled wave solution,
/// u^f(x,t) = f(t-x) + integral_x^t w(x,s) f(t-s) ds. Solves the Goursat
/// problem w_ss - w_xx + q(x) w = 0 on 0 < x < s < T with w(x,x) =
/// -(1/2) integral_0^x q and w(0,s) = 0. Values are stored on the
/// characteristic lattice xi = s+x, zeta = s-x with lattice step h, so grid
/// points (x,s) = (m h, n h), m <= n, are exact lattice nodes.
class GoursatKernel {
public:
    GoursatKernel(double T, double h, std::size_t latticeSize);

    double T() const { return T_; }
    double h() const { return h_; }
    std::size_t node_count() const { return nNodes_; }  // nodes along [0, T]

    /// w at grid point (x, s) = (m h, n h); requires m <= n <= node_count()-1.
    double at(std::size_t m, std::size_t n) const;

    /// Raw characteristic-lattice access, xi = i*h, zeta = j*h, j <= i,
    /// i + j <= 2*(node_count()-1).
    double& lattice(std::size_t i, std::size_t j) { return w_[idx(i, j)]; }
    double lattice(std::size_t i, std::size_t j) const { return w_[idx(i, j)]; }

private:
    std::size_t idx(std::size_t i, std::size_t j) const;
    double T_;
    double h_;
    std::size_t nNodes_;    // (T/h) + 1
    std::size_t latticeN_;  // 2*(nNodes-1) + 1 indices along xi
    std::vector<double> w_;
};

/// Response function r(t) = w_x(0, t) sampled on [0, horizon].
struct ResponseFunction {
    double horizon;
    SampledFunction samples;

    ResponseFunction(double hor, SampledFunction s);
    static ResponseFunction zero(double horizon, double h);

    double h() const { return samples.grid.step(); }
    double operator()(double t) const { return samples.interpolate(t); }
};

/// Kernel c^T(t,s) of the connecting operator C^T = I + c^T on [0,T]^2,
/// with the cumulative p(t) = (1/2) integral_0^t r kept alongside.
struct ConnectingKernel {
    double T;
    KernelMatrix matrix;

    double operator()(std::size_t i, std::size_t j) const { return matrix(i, j); }
};

/// March the Goursat problem for q over the triangle of size T with step h.
/// h must divide T. Second order in h.
GoursatKernel solve_goursat(const PotentialSpec& q, double T, double h);

/// r(t) = w_x(0,t) on [0, T] via one-sided second-order differencing. A
/// kernel of size T yields r on [0, T]; call solve_goursat with horizon 2T
/// to obtain r on [0, 2T].
ResponseFunction response_from_kernel(const GoursatKernel& w);

/// Convenience: Goursat solve over horizon 2T, then boundary differentiation.
ResponseFunction response_function(const PotentialSpec& q, double T, double h);

/// (R^T f)(t) = -f'(t) + (r * f)(t); requires f(0) = f'(0) = 0 within 1e-8.
SampledFunction apply_response(const ResponseFunction& r, const SampledFunction& f);

/// (W^T f)(x) = f(T-x) + integral_x^T w(x,tau) f(T-tau) dtau = u^f(., T).
SampledFunction apply_control(const GoursatKernel& w, const SampledFunction& f);

/// Adjoint (W^T)^* u(t) = u(T-t) + integral_0^{T-t} w(x, T-t) u(x) dx.
SampledFunction apply_control_adjoint(const GoursatKernel& w, const SampledFunction& u);

/// c^T(t,s) = p(2T-t-s) - p(|t-s|), p(xi) = (1/2) integral_0^xi r.
/// Requires r on [0, 2T].
ConnectingKernel connecting_kernel(const ResponseFunction& r, double T);

}  // namespace halfline
