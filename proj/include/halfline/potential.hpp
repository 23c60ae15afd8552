#pragma once

#include <limits>
#include <string>
#include <variant>

#include "halfline/grid.hpp"

namespace halfline {

/// Real potential on [0, inf). Evaluation is total on finite x >= 0 and
/// returns exactly 0 beyond the declared support bound.
class PotentialSpec {
public:
    struct Zero {};
    struct Constant {
        double c;
    };
    /// q(x) = -depth * sech((x - center)/width)^2, multiplied by a C-infinity
    /// window that is 1 on [0, 0.7*cutoff] and exactly 0 beyond cutoff.
    struct SechWell {
        double depth;
        double width;
        double center;
        double cutoff;
    };
    struct Tabulated {
        SampledFunction samples;  // x from 0, linear interpolation, 0 beyond
    };

    using Variant = std::variant<Zero, Constant, SechWell, Tabulated>;

    static PotentialSpec zero();
    static PotentialSpec constant(double c);
    static PotentialSpec sech_well(double depth, double width, double center, double cutoff);
    static PotentialSpec tabulated(SampledFunction samples);

    /// Smoothly windowed constant barrier: q = height on [0, flatEnd],
    /// C-infinity taper to 0 on [flatEnd, supportEnd]. Stored as Tabulated
    /// at the given sampling step.
    static PotentialSpec smooth_barrier(double height, double flatEnd, double supportEnd,
                                        double sampleStep = 1e-3);

    /// Ingest a two-column CSV (x, q); x strictly increasing from 0.
    static PotentialSpec from_csv(const std::string& path);

    double operator()(double x) const;

    /// Support bound a: q vanishes for x > a. +inf for Constant.
    double support_bound() const { return supportBound_; }
    bool has_compact_support() const {
        return supportBound_ < std::numeric_limits<double>::infinity();
    }

    const Variant& variant() const { return v_; }

    /// Human-readable descriptor, stable across runs (used for provenance).
    std::string describe() const;

private:
    PotentialSpec(Variant v, double supportBound);
    Variant v_;
    double supportBound_;
};

/// C-infinity transition: 1 for u <= 0, 0 for u >= 1, all derivatives vanish
/// at both ends.
double smooth_step_down(double u);

}  // namespace halfline
