#pragma once

#include <cstddef>
#include <vector>

namespace halfline {

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;

private:
    std::vector<double> x_, y_, m_;  // m = second derivatives at nodes
};

}  // namespace halfline
