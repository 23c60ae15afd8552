#pragma once

#include <complex>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {

/// Nystrom solve of the second-kind equation (I + K W) f = g, where W holds
/// the quadrature weights of the kernel's s-grid. Dense LU with partial
/// pivoting; raises SingularSystem when a pivot falls below
/// 1e-13 * ||I + KW||_inf. The returned solution satisfies
/// ||(I + KW) f - g||_inf <= 1e-10 ||g||_inf (verified, else SingularSystem).
SampledFunction solve_fredholm2(const KernelMatrix& kernel, const SampledFunction& rhs,
                                const std::vector<double>& quadratureWeights);

/// Same discretized operator, complex right-hand side (one factorization,
/// two back-substitutions).
ComplexSampledFunction solve_fredholm2(const KernelMatrix& kernel,
                                       const ComplexSampledFunction& rhs,
                                       const std::vector<double>& quadratureWeights);

/// Reusable factorization of I + K W for solving against many right-hand
/// sides (the per-horizon Krein systems reuse it across lambda).
class FredholmOperator {
public:
    FredholmOperator(const KernelMatrix& kernel, const std::vector<double>& quadratureWeights);
    ~FredholmOperator();
    FredholmOperator(FredholmOperator&&) noexcept;
    FredholmOperator& operator=(FredholmOperator&&) noexcept;
    FredholmOperator(const FredholmOperator&) = delete;
    FredholmOperator& operator=(const FredholmOperator&) = delete;

    std::vector<double> solve(const std::vector<double>& rhs) const;

    /// ||(I + KW) f - g||_inf for a candidate solution.
    double residual(const std::vector<double>& f, const std::vector<double>& g) const;

    std::size_t size() const;

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace halfline
