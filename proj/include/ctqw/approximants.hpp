#ifndef CTQW_APPROXIMANTS_HPP
#define CTQW_APPROXIMANTS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "ctqw/analytic.hpp"
#include "ctqw/transport.hpp"

namespace ctqw {

/// Classical average and quantum lower bound of the n-node star, both
/// evaluated from the closed-form spectrum {0, 1 (x n-2), n}.
template <typename Scalar>
std::pair<TimeSeries<Scalar>, TimeSeries<Scalar>> closed_form_star(int n, const TimeGrid<Scalar>& grid) {
    const auto ds = analytic_star_spectrum<Scalar>(n);
    const std::string meta = "star n=" + std::to_string(n) + " closed form";
    return {classical_avg_return(ds, grid, meta), quantum_lower_bound(ds, grid, meta)};
}

/// t-independent part of the star lower bound, (N-2)^2 / N^2.
template <typename Scalar = double>
Scalar star_dominant_term(int n) {
    const Scalar size(n);
    return (size - Scalar(2)) * (size - Scalar(2)) / (size * size);
}

/// Two highly degenerate levels only:
/// (1/N^2) [D_l^2 + D_m^2 + 2 D_l D_m cos((E_l - E_m) t)].
template <typename Scalar>
TimeSeries<Scalar> two_level_approximation(const Level<Scalar>& l, const Level<Scalar>& m, Eigen::Index n,
                                           const TimeGrid<Scalar>& grid, std::string metadata = {}) {
    using std::cos;
    TimeSeries<Scalar> ts(grid, Observable::approximant, std::move(metadata));
    const Scalar dl(l.degeneracy), dm(m.degeneracy), size(n);
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        ts.values(i) = (dl * dl + dm * dm + Scalar(2) * dl * dm * cos((l.energy - m.energy) * ts.times(i))) /
                       (size * size);
    return ts;
}

/// Large-N limit of the two-level form for the two-node arm star:
/// (1/2) [1 + cos(sqrt5 t)].
template <typename Scalar>
TimeSeries<Scalar> closed_form_arm_star(int n, const TimeGrid<Scalar>& grid) {
    if (n < 5 || n % 2 == 0)
        throw InvalidParameter("two-node arm star needs odd n >= 5, got " + std::to_string(n));
    using std::cos;
    using std::sqrt;
    TimeSeries<Scalar> ts(grid, Observable::approximant, "arm_star n=" + std::to_string(n) + " two-level limit");
    const Scalar w = sqrt(Scalar(5));
    for (Eigen::Index i = 0; i < ts.size(); ++i) ts.values(i) = (Scalar(1) + cos(w * ts.times(i))) / Scalar(2);
    return ts;
}

template <typename Scalar = double>
struct Approximant {
    TimeSeries<Scalar> series;
    Scalar normalization{};
    Scalar degeneracy{};
    std::optional<std::string> warning;
};

/// Three-level truncation of the dendrimer lower bound keeping E = 1 and
/// E = 2 -/+ sqrt3:
///   (1/Norm) {1 + 4 cos(sqrt3 t) [cos(sqrt3 t) + cos t]},  Norm = (N/D)^2.
///
/// D is the mean observed degeneracy of the three levels in `ds`. When the
/// three degeneracies differ by more than one the truncation has unequal
/// weights and a warning is attached.
template <typename Scalar>
Approximant<Scalar> closed_form_dendrimer(int generations, const DegeneracySpectrum<Scalar>& ds,
                                          const TimeGrid<Scalar>& grid) {
    if (generations <= 3)
        throw InvalidParameter("dendrimer three-level form needs G > 3, got " + std::to_string(generations));
    const auto report = dendrimer_degeneracy_check(ds, generations);
    const int d1 = report.degeneracy_one, d2 = report.degeneracy_lower, d3 = report.degeneracy_upper;
    if (d1 == 0 || d2 == 0 || d3 == 0)
        throw SpectrumMismatch("dendrimer spectrum lacks one of the levels 1, 2-sqrt3, 2+sqrt3");

    using std::cos;
    using std::sqrt;
    const Scalar d = Scalar(d1 + d2 + d3) / Scalar(3);
    const Scalar size(report.size);
    Approximant<Scalar> out{TimeSeries<Scalar>(grid, Observable::approximant,
                                               "dendrimer G=" + std::to_string(generations) + " three-level form"),
                            (size / d) * (size / d), d, std::nullopt};
    if (std::max({d1, d2, d3}) - std::min({d1, d2, d3}) > 1)
        out.warning = "approximation-inapplicable: degeneracies of E=1, 2-sqrt3, 2+sqrt3 are " + std::to_string(d1) +
                      ", " + std::to_string(d2) + ", " + std::to_string(d3);
    const Scalar w = sqrt(Scalar(3));
    auto& ts = out.series;
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const Scalar t = ts.times(i);
        const Scalar c = cos(w * t);
        ts.values(i) = std::max(Scalar(0), (Scalar(1) + Scalar(4) * c * (c + cos(t))) / out.normalization);
    }
    return out;
}

} // namespace ctqw

#endif // CTQW_APPROXIMANTS_HPP
