#include "halfline/weyl.hpp"

#include <cmath>
#include <stdexcept>

#include "halfline/errors.hpp"
#include "halfline/quadrature.hpp"

namespace halfline {

WeylSamples weyl_from_response(const ResponseFunction& r, const Grid1D& kGrid) {
    if (!(kGrid.start() > 0.0))
        throw std::invalid_argument("weyl_from_response: k grid must be strictly positive");
    const double H = r.horizon;
    const double supR = r.samples.max_abs();
    const std::size_t n = r.samples.size();
    const double h = r.h();
    const std::vector<double> w = quadrature_weights(n, h);

    WeylSamples out{kGrid, std::vector<double>(kGrid.count()),
                    std::vector<double>(kGrid.count()), kGrid.start()};
    for (std::size_t i = 0; i < kGrid.count(); ++i) {
        double k = kGrid.node(i);
        double bound = std::exp(-k * H) * supR / k;
        if (bound > 1e-8)
            throw TailNotNegligible("weyl_from_response: truncated-tail bound exceeds 1e-8 at k=" +
                                    std::to_string(k));
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += w[j] * std::exp(-k * static_cast<double>(j) * h) * r.samples[j];
        out.m[i] = -k + acc;
        out.tailBound[i] = bound;
    }
    return out;
}

SampledFunction a_amplitude(const ResponseFunction& r) {
    const std::size_t n = r.samples.size();
    Grid1D g(0.0, r.horizon / 2.0, n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = -2.0 * r.samples[i];  // A(t_i) = -2 r(2 t_i)
    return SampledFunction(g, std::move(v));
}

WeylSamples weyl_from_a_amplitude(const SampledFunction& A, const Grid1D& kGrid) {
    if (!(kGrid.start() > 0.0))
        throw std::invalid_argument("weyl_from_a_amplitude: k grid must be strictly positive");
    const std::size_t n = A.size();
    const double h = A.grid.step();
    const std::vector<double> w = quadrature_weights(n, h);
    WeylSamples out{kGrid, std::vector<double>(kGrid.count()),
                    std::vector<double>(kGrid.count(), 0.0), kGrid.start()};
    for (std::size_t i = 0; i < kGrid.count(); ++i) {
        double k = kGrid.node(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += w[j] * A[j] * std::exp(-2.0 * k * static_cast<double>(j) * h);
        out.m[i] = -k - acc;
    }
    return out;
}

WeylSamples weyl_reference(const PotentialSpec& q, const Grid1D& kGrid) {
    WeylSamples out{kGrid, std::vector<double>(kGrid.count()),
                    std::vector<double>(kGrid.count(), 0.0), kGrid.start()};
    if (std::holds_alternative<PotentialSpec::Zero>(q.variant())) {
        for (std::size_t i = 0; i < kGrid.count(); ++i) out.m[i] = -kGrid.node(i);
        return out;
    }
    if (const auto* c = std::get_if<PotentialSpec::Constant>(&q.variant())) {
        for (std::size_t i = 0; i < kGrid.count(); ++i) {
            double k = kGrid.node(i);
            out.m[i] = -std::sqrt(k * k + c->c);
        }
        return out;
    }
    throw UnsupportedPreset("weyl_reference: closed form exists only for Zero and Constant");
}

}  // namespace halfline
