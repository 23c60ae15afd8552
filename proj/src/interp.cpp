#include "halfline/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace halfline {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw std::invalid_argument("CubicSpline: need >= 3 matching nodes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("CubicSpline: x must be strictly increasing");

    // Thomas solve of the natural-spline tridiagonal system for m = S''.
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hm = x_[i] - x_[i - 1];
        double hp = x_[i + 1] - x_[i];
        double diag = 2.0 * (hm + hp) - hm * c[i - 1];
        c[i] = hp / diag;
        double rhs = 6.0 * ((y_[i + 1] - y_[i]) / hp - (y_[i] - y_[i - 1]) / hm);
        d[i] = (rhs - hm * d[i - 1]) / diag;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) x = x_.front();
    if (x >= x_.back()) x = x_.back();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (x_[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    double h = x_[hi] - x_[lo];
    double A = (x_[hi] - x) / h;
    double B = (x - x_[lo]) / h;
    return A * y_[lo] + B * y_[hi] +
           ((A * A * A - A) * m_[lo] + (B * B * B - B) * m_[hi]) * h * h / 6.0;
}

}  // namespace halfline
