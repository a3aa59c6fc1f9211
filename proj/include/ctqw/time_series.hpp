#ifndef CTQW_TIME_SERIES_HPP
#define CTQW_TIME_SERIES_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "ctqw/errors.hpp"
#include "ctqw/hamiltonian.hpp"

namespace ctqw {

enum class GridKind { linear, logarithmic };

/// Sampling abscissa for dimensionless time (hbar = 1, rate = 1).
template <typename Scalar = double>
class TimeGrid {
public:
    TimeGrid(GridKind kind, Scalar t_min, Scalar t_max, Eigen::Index n_points)
        : kind_(kind), t_min_(t_min), t_max_(t_max), n_points_(n_points) {
        if (!(t_min_ >= Scalar(0))) throw InvalidParameter("time grid needs t_min >= 0");
        if (!(t_min_ < t_max_)) throw InvalidParameter("time grid needs t_min < t_max");
        if (n_points_ < 2) throw InvalidParameter("time grid needs at least two points");
        if (kind_ == GridKind::logarithmic && !(t_min_ > Scalar(0)))
            throw InvalidParameter("logarithmic time grid needs t_min > 0");
    }

    static TimeGrid linear(Scalar t_min, Scalar t_max, Eigen::Index n_points) {
        return TimeGrid(GridKind::linear, t_min, t_max, n_points);
    }
    static TimeGrid logarithmic(Scalar t_min, Scalar t_max, Eigen::Index n_points) {
        return TimeGrid(GridKind::logarithmic, t_min, t_max, n_points);
    }

    GridKind kind() const noexcept { return kind_; }
    Scalar t_min() const noexcept { return t_min_; }
    Scalar t_max() const noexcept { return t_max_; }
    Eigen::Index n_points() const noexcept { return n_points_; }

    Scalar operator[](Eigen::Index i) const {
        using std::exp;
        using std::log;
        const Scalar u = Scalar(i) / Scalar(n_points_ - 1);
        if (i == n_points_ - 1) return t_max_;
        if (kind_ == GridKind::linear) return t_min_ + (t_max_ - t_min_) * u;
        return exp(log(t_min_) + (log(t_max_) - log(t_min_)) * u);
    }

    VectorX<Scalar> points() const {
        VectorX<Scalar> t(n_points_);
        for (Eigen::Index i = 0; i < n_points_; ++i) t(i) = (*this)[i];
        return t;
    }

    bool operator==(const TimeGrid&) const = default;

private:
    GridKind kind_;
    Scalar t_min_;
    Scalar t_max_;
    Eigen::Index n_points_;
};

/// Linear grid fine enough to resolve the fastest phase e^{-i E_max t}:
/// step <= pi / (8 E_max).
template <typename Scalar>
TimeGrid<Scalar> default_quantum_grid(Scalar max_energy, Scalar t_min, Scalar t_max) {
    using std::ceil;
    using std::max;
    const Scalar step = std::numbers::pi_v<Scalar> / (Scalar(8) * max(max_energy, Scalar(1e-12)));
    const auto intervals = static_cast<Eigen::Index>(ceil((t_max - t_min) / step));
    return TimeGrid<Scalar>::linear(t_min, t_max, max<Eigen::Index>(intervals, 1) + 1);
}

template <typename Scalar = double>
TimeGrid<Scalar> default_classical_grid() {
    return TimeGrid<Scalar>::logarithmic(Scalar(1e-2), Scalar(1e6), 600);
}

enum class Observable { classical_avg_return, quantum_avg_return, lower_bound, pairwise, approximant };

inline std::string_view observable_name(Observable o) {
    switch (o) {
    case Observable::classical_avg_return: return "classical_avg_return";
    case Observable::quantum_avg_return: return "quantum_avg_return";
    case Observable::lower_bound: return "lower_bound";
    case Observable::pairwise: return "pairwise";
    case Observable::approximant: return "approximant";
    }
    return "approximant";
}

/// An observable sampled on a grid. `times` caches grid.points().
template <typename Scalar = double>
struct TimeSeries {
    TimeGrid<Scalar> grid;
    VectorX<Scalar> times;
    VectorX<Scalar> values;
    Observable observable;
    std::string metadata;

    TimeSeries(TimeGrid<Scalar> g, Observable obs, std::string meta = {})
        : grid(g), times(g.points()), values(VectorX<Scalar>::Zero(g.n_points())), observable(obs),
          metadata(std::move(meta)) {}

    Eigen::Index size() const noexcept { return values.size(); }

    /// Monotone observables are their own envelope; oscillatory ones are
    /// enveloped by their local maxima.
    bool is_oscillatory() const noexcept { return observable != Observable::classical_avg_return; }
};

} // namespace ctqw

#endif // CTQW_TIME_SERIES_HPP
