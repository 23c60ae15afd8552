#include "halfline/grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "halfline/errors.hpp"

namespace halfline {

Grid1D::Grid1D(double start, double stop, std::size_t count)
    : start_(start), stop_(stop), count_(count) {
    if (!(stop > start)) throw std::invalid_argument("Grid1D: stop must exceed start");
    if (count < 2) throw std::invalid_argument("Grid1D: count must be >= 2");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw std::invalid_argument("Grid1D: bounds must be finite");
    step_ = (stop - start) / static_cast<double>(count - 1);
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = node(i);
    return out;
}

std::size_t Grid1D::nearest_index(double x) const {
    double t = (x - start_) / step_;
    long i = std::lround(t);
    i = std::clamp(i, 0L, static_cast<long>(count_) - 1);
    return static_cast<std::size_t>(i);
}

bool Grid1D::operator==(const Grid1D& other) const {
    return start_ == other.start_ && stop_ == other.stop_ && count_ == other.count_;
}

SampledFunction::SampledFunction(Grid1D g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.count())
        throw std::invalid_argument("SampledFunction: values length must equal grid count");
    for (double x : values)
        if (!std::isfinite(x))
            throw std::invalid_argument("SampledFunction: all entries must be finite");
}

SampledFunction SampledFunction::zeros(const Grid1D& g) {
    return SampledFunction(g, std::vector<double>(g.count(), 0.0));
}

double SampledFunction::interpolate(double x) const {
    if (x <= grid.start()) return values.front();
    if (x >= grid.stop()) return values.back();
    double t = (x - grid.start()) / grid.step();
    std::size_t i = static_cast<std::size_t>(t);
    if (i >= grid.count() - 1) return values.back();
    double frac = t - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
}

ComplexSampledFunction::ComplexSampledFunction(Grid1D g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.count())
        throw std::invalid_argument("ComplexSampledFunction: values length must equal grid count");
}

double ComplexSampledFunction::max_abs() const {
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z));
    return m;
}

KernelMatrix::KernelMatrix(Grid1D tGrid, Grid1D sGrid)
    : tGrid_(tGrid), sGrid_(sGrid), cols_(sGrid.count()),
      data_(tGrid.count() * sGrid.count(), 0.0) {}

double KernelMatrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

void KernelMatrix::check_symmetry() const {
    if (!is_square() || !(tGrid_ == sGrid_))
        throw DomainMismatch("KernelMatrix: symmetry check requires matching square grids");
    double scale = max_abs();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = i + 1; j < cols(); ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    if (worst > 1e-12 * std::max(scale, 1e-300))
        throw std::runtime_error("KernelMatrix: symmetry invariant violated");
}

}  // namespace halfline
