#pragma once

#include <vector>

#include "halfline/grid.hpp"
#include "halfline/potential.hpp"
#include "halfline/wave.hpp"

namespace halfline {

/// Titchmarsh-Weyl function on the negative real axis: values m(-k^2) for
/// k on kGrid, with per-sample truncated-tail error estimates.
struct WeylSamples {
    Grid1D kGrid;
    std::vector<double> m;
    std::vector<double> tailBound;  // e^{-k horizon} sup|r| / k per sample
    double kMin;                    // smallest k at which the tail bound held
};

/// m(-k^2) = -k + integral_0^horizon e^{-k alpha} r(alpha) d alpha.
/// Raises TailNotNegligible when the truncated-tail bound
/// e^{-k H} sup|r| / k exceeds 1e-8 at some grid k.
WeylSamples weyl_from_response(const ResponseFunction& r, const Grid1D& kGrid);

/// A(t) = -2 r(2t) on [0, horizon/2]; exact node lookups (step h/2).
SampledFunction a_amplitude(const ResponseFunction& r);

/// m(-k^2) = -k - integral_0^inf A(t) e^{-2tk} dt; change of variables makes
/// this algebraically identical to weyl_from_response on the same data.
WeylSamples weyl_from_a_amplitude(const SampledFunction& A, const Grid1D& kGrid);

/// Closed forms: -k for Zero, -sqrt(k^2 + c) for Constant(c).
WeylSamples weyl_reference(const PotentialSpec& q, const Grid1D& kGrid);

}  // namespace halfline
