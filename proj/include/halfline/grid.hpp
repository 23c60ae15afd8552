#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace halfline {

/// Uniform 1-D grid on [start, stop] with count nodes (count >= 2).
class Grid1D {
public:
    Grid1D(double start, double stop, std::size_t count);

    double start() const { return start_; }
    double stop() const { return stop_; }
    std::size_t count() const { return count_; }
    double step() const { return step_; }

    double node(std::size_t i) const { return start_ + static_cast<double>(i) * step_; }
    double operator[](std::size_t i) const { return node(i); }

    std::vector<double> nodes() const;

    /// Index of the node closest to x.
    std::size_t nearest_index(double x) const;

    bool operator==(const Grid1D& other) const;

private:
    double start_;
    double stop_;
    std::size_t count_;
    double step_;
};

/// Real-valued samples on a uniform grid.
struct SampledFunction {
    Grid1D grid;
    std::vector<double> values;

    SampledFunction(Grid1D g, std::vector<double> v);

    /// All-zero samples on g.
    static SampledFunction zeros(const Grid1D& g);

    /// Sample f at every node of g.
    template <typename F>
    static SampledFunction sample(const Grid1D& g, F&& f) {
        std::vector<double> v(g.count());
        for (std::size_t i = 0; i < g.count(); ++i) v[i] = f(g.node(i));
        return SampledFunction(g, std::move(v));
    }

    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    /// Linear interpolation inside the grid; clamps to end values outside.
    double interpolate(double x) const;

    double max_abs() const;
};

/// Complex-valued samples on a uniform grid.
struct ComplexSampledFunction {
    Grid1D grid;
    std::vector<std::complex<double>> values;

    ComplexSampledFunction(Grid1D g, std::vector<std::complex<double>> v);

    std::size_t size() const { return values.size(); }
    double max_abs() const;
};

/// Dense kernel matrix K(t_i, s_j) over a pair of grids.
class KernelMatrix {
public:
    KernelMatrix(Grid1D tGrid, Grid1D sGrid);

    /// Build from a callable kernel(t, s). `symmetric` asserts the
    /// symmetry invariant when tGrid == sGrid.
    template <typename F>
    static KernelMatrix build(const Grid1D& tGrid, const Grid1D& sGrid, F&& kernel,
                              bool symmetric = false) {
        KernelMatrix K(tGrid, sGrid);
        for (std::size_t i = 0; i < tGrid.count(); ++i)
            for (std::size_t j = 0; j < sGrid.count(); ++j)
                K(i, j) = kernel(tGrid.node(i), sGrid.node(j));
        if (symmetric) K.check_symmetry();
        return K;
    }

    const Grid1D& t_grid() const { return tGrid_; }
    const Grid1D& s_grid() const { return sGrid_; }
    std::size_t rows() const { return tGrid_.count(); }
    std::size_t cols() const { return sGrid_.count(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double max_abs() const;
    bool is_square() const { return rows() == cols(); }

    /// max |K(i,j) - K(j,i)| <= 1e-12 * max|K|, throws otherwise.
    void check_symmetry() const;

private:
    Grid1D tGrid_;
    Grid1D sGrid_;
    std::size_t cols_;
    std::vector<double> data_;
};

}  // namespace halfline
