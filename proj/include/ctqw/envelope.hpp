#ifndef CTQW_ENVELOPE_HPP
#define CTQW_ENVELOPE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "ctqw/spectrum.hpp"
#include "ctqw/time_series.hpp"

namespace ctqw {

/// Samples that make up the envelope of a series. Monotone observables use
/// every sample. Oscillatory ones use strict local maxima; a flat top
/// bounded by lower neighbours counts once, at its earliest sample.
template <typename Scalar>
std::vector<Eigen::Index> envelope_indices(const TimeSeries<Scalar>& ts) {
    std::vector<Eigen::Index> idx;
    const auto& v = ts.values;
    if (!ts.is_oscillatory()) {
        idx.resize(v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) idx[i] = i;
        return idx;
    }
    Eigen::Index i = 1;
    while (i + 1 < v.size()) {
        if (v(i) > v(i - 1)) {
            Eigen::Index j = i;
            while (j + 1 < v.size() && v(j + 1) == v(i)) ++j;
            if (j + 1 < v.size() && v(j + 1) < v(i)) idx.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return idx;
}

template <typename Scalar = double>
struct ScalingFit {
    Scalar exponent{};
    Scalar prefactor{};
    Scalar t_lo{};
    Scalar t_hi{};
    Scalar residual{};
    Eigen::Index points = 0;

    Scalar operator()(Scalar t) const {
        using std::pow;
        return prefactor * pow(t, exponent);
    }
};

/// Least-squares slope of log(envelope) against log(t) inside [t_lo, t_hi].
template <typename Scalar>
ScalingFit<Scalar> fit_envelope_exponent(const TimeSeries<Scalar>& ts, Scalar t_lo, Scalar t_hi) {
    if (!(t_lo < t_hi) || t_lo < ts.times(0) || t_hi > ts.times(ts.size() - 1) || !(t_lo > Scalar(0)))
        throw InvalidParameter("fit window must be a positive interval inside the grid");
    using std::exp;
    using std::log;
    using std::sqrt;
    std::vector<Scalar> x, y;
    for (auto i : envelope_indices(ts)) {
        const Scalar t = ts.times(i);
        if (t < t_lo || t > t_hi || !(ts.values(i) > Scalar(0))) continue;
        x.push_back(log(t));
        y.push_back(log(ts.values(i)));
    }
    if (x.size() < 5)
        throw InsufficientData("envelope fit needs at least 5 points in the window, found " +
                               std::to_string(x.size()));
    const Scalar m(x.size());
    Scalar mx(0), my(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    Scalar sxx(0), sxy(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    ScalingFit<Scalar> fit;
    fit.exponent = sxy / sxx;
    const Scalar intercept = my - fit.exponent * mx;
    fit.prefactor = exp(intercept);
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.points = static_cast<Eigen::Index>(x.size());
    Scalar ss(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Scalar r = y[i] - (intercept + fit.exponent * x[i]);
        ss += r * r;
    }
    fit.residual = sqrt(ss / m);
    return fit;
}

/// Trapezoidal mean of the samples lying in [t_lo, t_hi].
template <typename Scalar>
Scalar time_average(const TimeSeries<Scalar>& ts, Scalar t_lo, Scalar t_hi) {
    Scalar area(0);
    Scalar first(0), last(0);
    Eigen::Index used = 0;
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        if (ts.times(i) < t_lo || ts.times(i) > t_hi) continue;
        if (used > 0)
            area += (ts.times(i) - ts.times(i - 1)) * (ts.values(i) + ts.values(i - 1)) / Scalar(2);
        else
            first = ts.times(i);
        last = ts.times(i);
        ++used;
    }
    if (used < 2) throw InsufficientData("time average needs at least two samples in the window");
    return area / (last - first);
}

/// Time at which a decaying oscillation is first interrupted by returning
/// amplitude: the first envelope maximum that exceeds `rise_factor` times the
/// smallest earlier maximum, provided the envelope had already decayed below
/// half of its first maximum.
template <typename Scalar>
Scalar interference_time_estimate(const TimeSeries<Scalar>& ts, Scalar rise_factor = Scalar(2)) {
    const auto idx = envelope_indices(ts);
    if (idx.size() < 3) throw NoPlateau("series has too few envelope maxima to locate interference");
    const Scalar first = ts.values(idx.front());
    Scalar running_min = first;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Scalar v = ts.values(idx[k]);
        if (running_min <= first / Scalar(2) && v > rise_factor * running_min) return ts.times(idx[k]);
        running_min = std::min(running_min, v);
    }
    throw NoPlateau(running_min <= first / Scalar(2) ? "envelope decays but never turns over within the grid"
                                                     : "envelope never decays; no interference onset");
}

/// 2 pi over the smallest gap between distinct levels.
template <typename Scalar>
Scalar slowest_period(const DegeneracySpectrum<Scalar>& ds) {
    const auto& lv = ds.levels();
    if (lv.size() < 2) throw InsufficientData("a single level has no oscillation");
    Scalar gap = lv[1].energy - lv[0].energy;
    for (std::size_t i = 2; i < lv.size(); ++i) gap = std::min(gap, lv[i].energy - lv[i - 1].energy);
    return Scalar(2) * std::numbers::pi_v<Scalar> / gap;
}

/// Window [4 tc, 14 tc] for a characteristic time tc (interference time or
/// slowest period); long_time_mean averages its final 80%.
template <typename Scalar>
std::pair<Scalar, Scalar> long_time_window(Scalar characteristic_time) {
    return {Scalar(4) * characteristic_time, Scalar(14) * characteristic_time};
}

template <typename Scalar>
Scalar long_time_mean(const TimeSeries<Scalar>& ts, std::pair<Scalar, Scalar> window) {
    const Scalar start = window.first + Scalar(0.2) * (window.second - window.first);
    return time_average(ts, start, window.second);
}

} // namespace ctqw

#endif // CTQW_ENVELOPE_HPP
