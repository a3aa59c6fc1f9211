#ifndef CTQW_TRANSPORT_HPP
#define CTQW_TRANSPORT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "ctqw/spectrum.hpp"
#include "ctqw/time_series.hpp"

namespace ctqw {

namespace detail {

template <typename Scalar>
void require_eigenvectors(const Spectrum<Scalar>& s) {
    if (!s.has_eigenvectors()) throw InvalidParameter("observable needs eigenvectors; decompose with Eigenvectors::compute");
}

template <typename Scalar>
Eigen::Index node_index(const Spectrum<Scalar>& s, int node) {
    if (node < 1 || node > s.size())
        throw InvalidParameter("node " + std::to_string(node) + " outside 1.." + std::to_string(s.size()));
    return node - 1;
}

// H is positive semi-definite; negative eigenvalues are round-off and must
// not make the classical decay grow.
template <typename Scalar>
Scalar decay_rate(Scalar energy) {
    return std::max(energy, Scalar(0));
}

} // namespace detail

/// Averaged classical return probability (1/N) sum_n D_n exp(-E_n t).
template <typename Scalar>
TimeSeries<Scalar> classical_avg_return(const DegeneracySpectrum<Scalar>& ds, const TimeGrid<Scalar>& grid,
                                        std::string metadata = {}) {
    using std::exp;
    TimeSeries<Scalar> ts(grid, Observable::classical_avg_return, std::move(metadata));
    const Scalar n(ds.total());
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        Scalar acc(0);
        for (const auto& l : ds.levels()) acc += Scalar(l.degeneracy) * exp(-detail::decay_rate(l.energy) * ts.times(i));
        ts.values(i) = acc / n;
    }
    return ts;
}

/// Eigenvalue-only lower bound |(1/N) sum_n D_n exp(-i E_n t)|^2 of the
/// averaged quantum return probability.
template <typename Scalar>
TimeSeries<Scalar> quantum_lower_bound(const DegeneracySpectrum<Scalar>& ds, const TimeGrid<Scalar>& grid,
                                       std::string metadata = {}) {
    using std::cos;
    using std::sin;
    TimeSeries<Scalar> ts(grid, Observable::lower_bound, std::move(metadata));
    const Scalar n(ds.total());
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const Scalar t = ts.times(i);
        Scalar re(0), im(0);
        for (const auto& l : ds.levels()) {
            re += Scalar(l.degeneracy) * cos(l.energy * t);
            im += Scalar(l.degeneracy) * sin(l.energy * t);
        }
        re /= n;
        im /= n;
        ts.values(i) = re * re + im * im;
    }
    return ts;
}

/// Averaged quantum return probability (1/N) sum_j |<j|U(t)|j>|^2.
template <typename Scalar>
TimeSeries<Scalar> quantum_avg_return(const Spectrum<Scalar>& s, const TimeGrid<Scalar>& grid,
                                      std::string metadata = {}) {
    detail::require_eigenvectors(s);
    TimeSeries<Scalar> ts(grid, Observable::quantum_avg_return, std::move(metadata));
    const Eigen::Index n = s.size();
    // <j|U(t)|j> = sum_n exp(-i E_n t) |<j|psi_n>|^2, evaluated for a block of times at once
    const MatrixX<Scalar> weights = s.eigenvectors.cwiseAbs2();
    constexpr Eigen::Index block = 256;
    for (Eigen::Index first = 0; first < ts.size(); first += block) {
        const Eigen::Index count = std::min(block, ts.size() - first);
        const MatrixX<Scalar> phase = s.eigenvalues * ts.times.segment(first, count).transpose();
        const MatrixX<Scalar> re = weights * phase.array().cos().matrix();
        const MatrixX<Scalar> im = weights * phase.array().sin().matrix();
        ts.values.segment(first, count) =
            (re.array().square() + im.array().square()).colwise().sum().transpose() / Scalar(n);
    }
    return ts;
}

/// U(t) = exp(-i H t) assembled from the spectrum.
template <typename Scalar>
MatrixX<std::complex<Scalar>> quantum_propagator(const Spectrum<Scalar>& s, Scalar t) {
    detail::require_eigenvectors(s);
    using Complex = std::complex<Scalar>;
    VectorX<Complex> phases(s.size());
    for (Eigen::Index n = 0; n < s.size(); ++n) phases(n) = std::polar(Scalar(1), -s.eigenvalues(n) * t);
    const MatrixX<Complex> v = s.eigenvectors.template cast<Complex>();
    return v * phases.asDiagonal() * v.transpose();
}

/// exp(-H t), the classical propagator; column j is p_{., j}(t).
template <typename Scalar>
MatrixX<Scalar> classical_propagator(const Spectrum<Scalar>& s, Scalar t) {
    detail::require_eigenvectors(s);
    using std::exp;
    VectorX<Scalar> decay(s.size());
    for (Eigen::Index n = 0; n < s.size(); ++n) decay(n) = exp(-detail::decay_rate(s.eigenvalues(n)) * t);
    return s.eigenvectors * decay.asDiagonal() * s.eigenvectors.transpose();
}

/// pi_{k,j}(t) for 1-based nodes.
template <typename Scalar>
Scalar pairwise_transition(const Spectrum<Scalar>& s, int k, int j, Scalar t) {
    detail::require_eigenvectors(s);
    using std::cos;
    using std::sin;
    const auto kk = detail::node_index(s, k);
    const auto jj = detail::node_index(s, j);
    Scalar re(0), im(0);
    for (Eigen::Index n = 0; n < s.size(); ++n) {
        const Scalar overlap = s.eigenvectors(kk, n) * s.eigenvectors(jj, n);
        re += overlap * cos(s.eigenvalues(n) * t);
        im -= overlap * sin(s.eigenvalues(n) * t);
    }
    return re * re + im * im;
}

/// p_{k,j}(t) = <k|exp(-H t)|j> for 1-based nodes.
template <typename Scalar>
Scalar classical_pairwise(const Spectrum<Scalar>& s, int k, int j, Scalar t) {
    detail::require_eigenvectors(s);
    using std::exp;
    const auto kk = detail::node_index(s, k);
    const auto jj = detail::node_index(s, j);
    Scalar p(0);
    for (Eigen::Index n = 0; n < s.size(); ++n)
        p += s.eigenvectors(kk, n) * s.eigenvectors(jj, n) * exp(-detail::decay_rate(s.eigenvalues(n)) * t);
    return p;
}

/// Long-time average chi_{k,j} = sum_c (P_c)_{kj}^2 over the eigenspace
/// projectors P_c of the clusters in `ds`.
template <typename Scalar>
MatrixX<Scalar> lta_pairwise(const Spectrum<Scalar>& s, const DegeneracySpectrum<Scalar>& ds) {
    detail::require_eigenvectors(s);
    require_matching(s, ds);
    const Eigen::Index n = s.size();
    MatrixX<Scalar> chi = MatrixX<Scalar>::Zero(n, n);
    for (const auto& l : ds.levels()) {
        const auto block = s.eigenvectors.middleCols(l.offset, l.degeneracy);
        const MatrixX<Scalar> projector = block * block.transpose();
        chi.array() += projector.array().square();
    }
    return chi;
}

/// Long-time average of the averaged quantum return probability,
/// (1/N) sum_j sum_c (P_c)_{jj}^2. Reduces to (1/N) sum_{j,n} |<j|psi_n>|^4
/// when every level is simple.
template <typename Scalar>
Scalar lta_avg_exact(const Spectrum<Scalar>& s, const DegeneracySpectrum<Scalar>& ds) {
    detail::require_eigenvectors(s);
    require_matching(s, ds);
    Scalar acc(0);
    for (const auto& l : ds.levels()) {
        const VectorX<Scalar> diag = s.eigenvectors.middleCols(l.offset, l.degeneracy).cwiseAbs2().rowwise().sum();
        acc += diag.squaredNorm();
    }
    return acc / Scalar(s.size());
}

template <typename Scalar>
Scalar lta_avg_exact(const Spectrum<Scalar>& s) {
    return lta_avg_exact(s, cluster_degeneracies(s));
}

/// (1/N) sum_{j,n} |<j|psi_n>|^4, the per-eigenvector form. Basis dependent
/// inside degenerate eigenspaces.
template <typename Scalar>
Scalar eigenvector_fourth_moment(const Spectrum<Scalar>& s) {
    detail::require_eigenvectors(s);
    return s.eigenvectors.array().square().square().sum() / Scalar(s.size());
}

/// (1/N^2) sum_n D_n^2.
template <typename Scalar>
Scalar lta_avg_lower_bound(const DegeneracySpectrum<Scalar>& ds) {
    Scalar acc(0);
    for (const auto& l : ds.levels()) acc += Scalar(l.degeneracy) * Scalar(l.degeneracy);
    const Scalar n(ds.total());
    return acc / (n * n);
}

template <typename Scalar = double>
struct LtaReport {
    std::optional<MatrixX<Scalar>> chi_pairwise;
    Scalar chi_avg_exact{};
    Scalar chi_avg_lower{};
    Scalar equipartition{};
    /// Value of the per-eigenvector form; differs from chi_avg_exact only
    /// when degenerate clusters exist.
    Scalar fourth_moment{};
    bool degenerate_clusters = false;
};

template <typename Scalar>
LtaReport<Scalar> lta_report(const Spectrum<Scalar>& s, const DegeneracySpectrum<Scalar>& ds,
                             bool with_pairwise = false) {
    LtaReport<Scalar> r;
    if (with_pairwise) r.chi_pairwise = lta_pairwise(s, ds);
    r.chi_avg_exact = lta_avg_exact(s, ds);
    r.chi_avg_lower = lta_avg_lower_bound(ds);
    r.equipartition = Scalar(1) / Scalar(s.size());
    r.fourth_moment = eigenvector_fourth_moment(s);
    r.degenerate_clusters = std::any_of(ds.levels().begin(), ds.levels().end(),
                                        [](const auto& l) { return l.degeneracy > 1; });
    return r;
}

} // namespace ctqw

#endif // CTQW_TRANSPORT_HPP
