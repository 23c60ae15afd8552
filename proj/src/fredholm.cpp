#include "halfline/fredholm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "halfline/errors.hpp"

namespace halfline {

namespace {

Eigen::MatrixXd assemble(const KernelMatrix& kernel, const std::vector<double>& w) {
    if (!kernel.is_square())
        throw DomainMismatch("solve_fredholm2: kernel must be square");
    const std::size_t n = kernel.rows();
    if (w.size() != n)
        throw DomainMismatch("solve_fredholm2: weight count must match kernel size");
    Eigen::MatrixXd A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A(i, j) = (i == j ? 1.0 : 0.0) + kernel(i, j) * w[j];
    return A;
}

double inf_norm(const Eigen::MatrixXd& A) {
    return A.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

struct FredholmOperator::Impl {
    Eigen::MatrixXd A;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

FredholmOperator::FredholmOperator(const KernelMatrix& kernel,
                                   const std::vector<double>& quadratureWeights)
    : impl_(new Impl) {
    impl_->A = assemble(kernel, quadratureWeights);
    impl_->lu.compute(impl_->A);
    const double norm = inf_norm(impl_->A);
    const double pivot_floor = 1e-13 * std::max(norm, 1e-30);
    const auto diag = impl_->lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (std::abs(diag(i)) < pivot_floor) {
            delete impl_;
            impl_ = nullptr;
            throw SingularSystem("solve_fredholm2: pivot below 1e-13 * matrix norm (T too "
                                 "large, grid too coarse, or inconsistent data)");
        }
    }
}

FredholmOperator::~FredholmOperator() { delete impl_; }

FredholmOperator::FredholmOperator(FredholmOperator&& other) noexcept : impl_(other.impl_) {
    other.impl_ = nullptr;
}

FredholmOperator& FredholmOperator::operator=(FredholmOperator&& other) noexcept {
    if (this != &other) {
        delete impl_;
        impl_ = other.impl_;
        other.impl_ = nullptr;
    }
    return *this;
}

std::size_t FredholmOperator::size() const { return static_cast<std::size_t>(impl_->A.rows()); }

std::vector<double> FredholmOperator::solve(const std::vector<double>& rhs) const {
    Eigen::Map<const Eigen::VectorXd> g(rhs.data(), rhs.size());
    Eigen::VectorXd f = impl_->lu.solve(g);
    // One step of iterative refinement keeps the residual contract tight even
    // for moderately conditioned systems.
    Eigen::VectorXd r = g - impl_->A * f;
    f += impl_->lu.solve(r);
    return std::vector<double>(f.data(), f.data() + f.size());
}

double FredholmOperator::residual(const std::vector<double>& f,
                                  const std::vector<double>& g) const {
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), f.size());
    Eigen::Map<const Eigen::VectorXd> gv(g.data(), g.size());
    return (impl_->A * fv - gv).cwiseAbs().maxCoeff();
}

SampledFunction solve_fredholm2(const KernelMatrix& kernel, const SampledFunction& rhs,
                                const std::vector<double>& quadratureWeights) {
    if (!(kernel.s_grid() == rhs.grid))
        throw DomainMismatch("solve_fredholm2: rhs grid must match kernel grid");
    FredholmOperator op(kernel, quadratureWeights);
    std::vector<double> f = op.solve(rhs.values);
    const double res = op.residual(f, rhs.values);
    if (res > 1e-10 * std::max(rhs.max_abs(), 1e-300))
        throw SingularSystem("solve_fredholm2: residual exceeds 1e-10 * ||g||");
    return SampledFunction(rhs.grid, std::move(f));
}

ComplexSampledFunction solve_fredholm2(const KernelMatrix& kernel,
                                       const ComplexSampledFunction& rhs,
                                       const std::vector<double>& quadratureWeights) {
    if (!(kernel.s_grid() == rhs.grid))
        throw DomainMismatch("solve_fredholm2: rhs grid must match kernel grid");
    FredholmOperator op(kernel, quadratureWeights);
    const std::size_t n = rhs.size();
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = rhs.values[i].real();
        im[i] = rhs.values[i].imag();
    }
    std::vector<double> fre = op.solve(re);
    std::vector<double> fim = op.solve(im);
    double res = std::max(op.residual(fre, re), op.residual(fim, im));
    if (res > 1e-10 * std::max(rhs.max_abs(), 1e-300))
        throw SingularSystem("solve_fredholm2: residual exceeds 1e-10 * ||g||");
    std::vector<std::complex<double>> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = {fre[i], fim[i]};
    return ComplexSampledFunction(rhs.grid, std::move(f));
}

}  // namespace halfline
