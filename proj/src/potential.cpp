#include "halfline/potential.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace halfline {

double smooth_step_down(double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    auto sigma = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    double a = sigma(1.0 - u);
    double b = sigma(u);
    return a / (a + b);
}

PotentialSpec::PotentialSpec(Variant v, double supportBound)
    : v_(std::move(v)), supportBound_(supportBound) {}

PotentialSpec PotentialSpec::zero() { return PotentialSpec(Zero{}, 0.0); }

PotentialSpec PotentialSpec::constant(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("PotentialSpec: constant must be finite");
    return PotentialSpec(Constant{c}, std::numeric_limits<double>::infinity());
}

PotentialSpec PotentialSpec::sech_well(double depth, double width, double center, double cutoff) {
    if (!(depth > 0.0)) throw std::invalid_argument("PotentialSpec: depth must be > 0");
    if (!(width > 0.0)) throw std::invalid_argument("PotentialSpec: width must be > 0");
    if (!(center >= 0.0)) throw std::invalid_argument("PotentialSpec: center must be >= 0");
    if (!(cutoff > center)) throw std::invalid_argument("PotentialSpec: cutoff must exceed center");
    return PotentialSpec(SechWell{depth, width, center, cutoff}, cutoff);
}

PotentialSpec PotentialSpec::tabulated(SampledFunction samples) {
    if (samples.grid.start() != 0.0)
        throw std::invalid_argument("PotentialSpec: tabulated grid must start at 0");
    double a = samples.grid.stop();
    return PotentialSpec(Tabulated{std::move(samples)}, a);
}

PotentialSpec PotentialSpec::smooth_barrier(double height, double flatEnd, double supportEnd,
                                            double sampleStep) {
    if (!(supportEnd > flatEnd) || !(flatEnd > 0.0))
        throw std::invalid_argument("PotentialSpec: need 0 < flatEnd < supportEnd");
    std::size_t n = static_cast<std::size_t>(std::ceil(supportEnd / sampleStep)) + 1;
    Grid1D g(0.0, supportEnd, n);
    auto q = [&](double x) {
        return height * smooth_step_down((x - flatEnd) / (supportEnd - flatEnd));
    };
    return tabulated(SampledFunction::sample(g, q));
}

PotentialSpec PotentialSpec::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("PotentialSpec: cannot open " + path);
    std::vector<double> xs, qs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        double x, q;
        if (!(row >> x >> q)) {
            // header row is allowed once
            if (xs.empty()) continue;
            throw std::runtime_error("PotentialSpec: malformed row in " + path);
        }
        xs.push_back(x);
        qs.push_back(q);
    }
    if (xs.size() < 2) throw std::runtime_error("PotentialSpec: need at least two samples");
    if (xs.front() != 0.0)
        throw std::runtime_error("PotentialSpec: tabulated x must start at 0");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::runtime_error("PotentialSpec: x column must be strictly increasing");
    // Resample to the uniform grid of matching resolution; tabulated inputs
    // are usually uniform already, in which case this is an exact copy.
    double span = xs.back();
    double minstep = span;
    for (std::size_t i = 1; i < xs.size(); ++i) minstep = std::min(minstep, xs[i] - xs[i - 1]);
    std::size_t n = static_cast<std::size_t>(std::lround(span / minstep)) + 1;
    Grid1D g(0.0, span, n);
    std::vector<double> v(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = g.node(i);
        while (seg + 2 < xs.size() && xs[seg + 1] < x) ++seg;
        double t = (x - xs[seg]) / (xs[seg + 1] - xs[seg]);
        t = std::clamp(t, 0.0, 1.0);
        v[i] = qs[seg] * (1.0 - t) + qs[seg + 1] * t;
    }
    return tabulated(SampledFunction(g, std::move(v)));
}

double PotentialSpec::operator()(double x) const {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("PotentialSpec: x must be finite and >= 0");
    if (x > supportBound_) return 0.0;
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Zero>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, Constant>) {
                return p.c;
            } else if constexpr (std::is_same_v<T, SechWell>) {
                double s = 1.0 / std::cosh((x - p.center) / p.width);
                double flat = 0.7 * p.cutoff;
                double win = smooth_step_down((x - flat) / (p.cutoff - flat));
                return -p.depth * s * s * win;
            } else {
                return p.samples.interpolate(x);
            }
        },
        v_);
}

std::string PotentialSpec::describe() const {
    std::ostringstream out;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Zero>) {
                out << "zero";
            } else if constexpr (std::is_same_v<T, Constant>) {
                out << "constant c=" << p.c;
            } else if constexpr (std::is_same_v<T, SechWell>) {
                out << "sechwell depth=" << p.depth << " width=" << p.width
                    << " center=" << p.center << " cutoff=" << p.cutoff;
            } else {
                out << "tabulated n=" << p.samples.size() << " a=" << p.samples.grid.stop();
            }
        },
        v_);
    return out.str();
}

}  // namespace halfline
