#include "halfline/inversion.hpp"

#include <cmath>
#include <stdexcept>

#include "halfline/errors.hpp"
#include "halfline/fredholm.hpp"
#include "halfline/parallel.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {

namespace {

// f(0+) by quadratic extrapolation through the solution values at h, 2h, 3h;
// suppresses the Nystrom boundary-layer error at the first node.
double extrapolate_origin(const std::vector<double>& f) {
    if (f.size() >= 4) return 3.0 * f[1] - 3.0 * f[2] + f[3];
    return f.front();
}

std::vector<double> krein_rhs(const Grid1D& g, double T, double lambda) {
    std::vector<double> rhs(g.count());
    for (std::size_t i = 0; i < g.count(); ++i)
        rhs[i] = sine_kernel(lambda, T - g.node(i));
    return rhs;
}

}  // namespace

KreinSolveResult krein_solve(const ConnectingKernel& cT, double lambda) {
    const Grid1D& g = cT.matrix.t_grid();
    const std::vector<double> w = quadrature_weights(g.count(), g.step());
    FredholmOperator op(cT.matrix, w);
    std::vector<double> rhs = krein_rhs(g, cT.T, lambda);
    std::vector<double> f = op.solve(rhs);
    double res = op.residual(f, rhs);
    double scale = 0.0;
    for (double v : rhs) scale = std::max(scale, std::abs(v));
    if (res > 1e-8 * std::max(scale, 1e-300))
        throw SingularSystem("krein_solve: residual exceeds 1e-8 * ||rhs||");
    double y = extrapolate_origin(f);
    return {cT.T, lambda, SampledFunction(g, std::move(f)), y, res};
}

SampledFunction boundary_trace_curve(const ResponseFunction& r, double lambda,
                                     const Grid1D& Tgrid) {
    if (r.horizon < 2.0 * Tgrid.stop() - 1e-12)
        throw HorizonTooShort("boundary_trace_curve: response must cover [0, 2 max(Tgrid)]");
    std::vector<double> y(Tgrid.count(), 0.0);
    parallel_for(Tgrid.count(), [&](std::size_t i) {
        double T = Tgrid.node(i);
        try {
            ConnectingKernel cT = connecting_kernel(r, T);
            y[i] = krein_solve(cT, lambda).boundaryTrace;
        } catch (const SingularSystem& e) {
            throw SingularSystem("boundary_trace_curve at T=" + std::to_string(T) + ": " +
                                 e.what());
        }
    });
    return SampledFunction(Tgrid, std::move(y));
}

ReconstructionResult recover_potential(const ResponseFunction& r, const Grid1D& Tgrid,
                                       const std::vector<double>& lambdaSet) {
    if (lambdaSet.empty())
        throw std::invalid_argument("recover_potential: lambdaSet must be nonempty");
    if (r.horizon < 2.0 * Tgrid.stop() - 1e-12)
        throw HorizonTooShort("recover_potential: response must cover [0, 2 max(Tgrid)]");
    const std::size_t n = Tgrid.count();
    if (n < 5)
        throw std::invalid_argument("recover_potential: need at least 5 trace nodes");
    const double h = Tgrid.step();

    // One factorization per T, reused across the lambda set.
    std::vector<std::vector<double>> traces(lambdaSet.size(), std::vector<double>(n, 0.0));
    parallel_for(n, [&](std::size_t i) {
        double T = Tgrid.node(i);
        ConnectingKernel cT = connecting_kernel(r, T);
        const Grid1D& g = cT.matrix.t_grid();
        const std::vector<double> w = quadrature_weights(g.count(), g.step());
        FredholmOperator op(cT.matrix, w);
        for (std::size_t l = 0; l < lambdaSet.size(); ++l) {
            std::vector<double> rhs = krein_rhs(g, T, lambdaSet[l]);
            std::vector<double> f = op.solve(rhs);
            traces[l][i] = extrapolate_origin(f);
        }
    });

    // Savitzky-Golay second derivative, window 5, quadratic fit:
    // y'' ~ (2 y_{i-2} - y_{i-1} - 2 y_i - y_{i+1} + 2 y_{i+2}) / (7 h^2).
    ReconstructionResult out;
    out.trimmedLow = 2;
    out.trimmedHigh = 2;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        std::size_t best = 0;
        double bestAbs = -1.0;
        for (std::size_t l = 0; l < lambdaSet.size(); ++l) {
            double a = std::abs(traces[l][i]);
            if (a > bestAbs + 1e-15 * std::max(1.0, bestAbs)) {
                bestAbs = a;
                best = l;
            }
        }
        if (bestAbs < 1e-6)
            throw AllTracesVanish("recover_potential: |y(T, lambda)| < 1e-6 for all lambda at T=" +
                                  std::to_string(Tgrid.node(i)));
        const auto& y = traces[best];
        double ypp = (2.0 * y[i - 2] - y[i - 1] - 2.0 * y[i] - y[i + 1] + 2.0 * y[i + 2]) /
                     (7.0 * h * h);
        out.x.push_back(Tgrid.node(i));
        out.q.push_back(lambdaSet[best] + ypp / y[i]);
        out.lambdaUsed.push_back(lambdaSet[best]);
        out.conditioning.push_back(h * h * std::abs(ypp) / std::abs(y[i]));
    }
    return out;
}

}  // namespace halfline
