#ifndef CTQW_SPECTRUM_HPP
#define CTQW_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctqw/errors.hpp"
#include "ctqw/hamiltonian.hpp"

namespace ctqw {

enum class Eigenvectors { compute, skip };

/// Eigenvalues in ascending order; column n of `eigenvectors` belongs to
/// eigenvalue n. The eigenvector matrix is empty for a values-only
/// decomposition.
template <typename Scalar = double>
struct Spectrum {
    VectorX<Scalar> eigenvalues;
    MatrixX<Scalar> eigenvectors;

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
    bool has_eigenvectors() const noexcept {
        return size() > 0 && eigenvectors.cols() == size() && eigenvectors.rows() == size();
    }
    Scalar max_energy() const { return size() ? eigenvalues(size() - 1) : Scalar(0); }
};

template <typename Scalar>
Spectrum<Scalar> eigendecompose(const Hamiltonian<Scalar>& h, Eigenvectors mode = Eigenvectors::compute) {
    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(
        h.matrix(), mode == Eigenvectors::compute ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "symmetric eigensolver did not converge for " << h.size() << "x" << h.size()
            << " matrix (trace " << h.matrix().trace() << ", frobenius norm " << h.matrix().norm() << ")";
        throw NumericalError(msg.str());
    }
    Spectrum<Scalar> s;
    s.eigenvalues = solver.eigenvalues();
    if (mode == Eigenvectors::compute) s.eigenvectors = solver.eigenvectors();
    return s;
}

/// One distinct energy of a clustered spectrum. `offset` is the index of the
/// first member in the ascending eigenvalue list, so members occupy
/// eigenvector columns [offset, offset + degeneracy).
template <typename Scalar = double>
struct Level {
    Scalar energy{};
    int degeneracy = 0;
    Eigen::Index offset = 0;
};

template <typename Scalar>
Scalar default_cluster_tolerance(Scalar max_energy) {
    using std::max;
    return Scalar(1e-8) * max(Scalar(1), max_energy);
}

template <typename Scalar = double>
class DegeneracySpectrum {
public:
    DegeneracySpectrum() = default;

    /// Builds from (energy, degeneracy) pairs already in ascending order.
    DegeneracySpectrum(const std::vector<std::pair<Scalar, int>>& levels, Scalar tolerance)
        : tolerance_(tolerance) {
        levels_.reserve(levels.size());
        for (const auto& [energy, degeneracy] : levels) {
            if (degeneracy < 1) throw InvalidParameter("level degeneracy must be positive");
            if (!levels_.empty() && !(energy - levels_.back().energy > tolerance_))
                throw InvalidParameter("levels must be ascending and separated by more than the tolerance");
            levels_.push_back({energy, degeneracy, total_});
            total_ += degeneracy;
        }
    }

    const std::vector<Level<Scalar>>& levels() const noexcept { return levels_; }
    Eigen::Index total() const noexcept { return total_; }
    Scalar tolerance() const noexcept { return tolerance_; }
    std::size_t size() const noexcept { return levels_.size(); }

    /// First level whose energy lies within `tol` of `energy`, or nullptr.
    const Level<Scalar>* find(Scalar energy, Scalar tol) const {
        using std::abs;
        for (const auto& l : levels_)
            if (abs(l.energy - energy) <= tol) return &l;
        return nullptr;
    }

    /// Levels sorted by decreasing degeneracy, ties in ascending energy.
    std::vector<Level<Scalar>> by_degeneracy() const {
        auto out = levels_;
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.degeneracy > b.degeneracy; });
        return out;
    }

private:
    std::vector<Level<Scalar>> levels_;
    Eigen::Index total_ = 0;
    Scalar tolerance_{};
};

/// Merges consecutive eigenvalues whose gap is at most `tol` (single linkage)
/// and represents each cluster by the mean of its members. A simple level
/// within `tol` of zero is the zero mode of a connected network and is
/// represented by exactly 0. tol == 0 selects default_cluster_tolerance(E_max).
template <typename Scalar>
DegeneracySpectrum<Scalar> cluster_degeneracies(const Spectrum<Scalar>& s, Scalar tol = Scalar(0)) {
    if (tol < Scalar(0)) throw InvalidParameter("cluster tolerance must be nonnegative");
    if (tol == Scalar(0)) tol = default_cluster_tolerance(s.max_energy());
    std::vector<std::pair<Scalar, int>> levels;
    const auto& e = s.eigenvalues;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= e.size(); ++i) {
        if (i == e.size() || e(i) - e(i - 1) > tol) {
            const auto count = i - start;
            // mean as an offset from the first member, exact when members coincide
            const Scalar base = e(start);
            Scalar energy = base + (e.segment(start, count).array() - base).mean();
            using std::abs;
            if (count == 1 && abs(energy) <= tol) energy = Scalar(0);
            levels.emplace_back(energy, static_cast<int>(count));
            start = i;
        }
    }
    return DegeneracySpectrum<Scalar>(levels, tol);
}

/// Values-only spectrum with every level energy repeated by its degeneracy.
template <typename Scalar>
Spectrum<Scalar> representative_spectrum(const DegeneracySpectrum<Scalar>& ds) {
    Spectrum<Scalar> s;
    s.eigenvalues.resize(ds.total());
    for (const auto& l : ds.levels()) s.eigenvalues.segment(l.offset, l.degeneracy).setConstant(l.energy);
    return s;
}

/// Throws SpectrumMismatch unless `ds` partitions the eigenvalues of `s`.
template <typename Scalar>
void require_matching(const Spectrum<Scalar>& s, const DegeneracySpectrum<Scalar>& ds) {
    if (ds.total() != s.size())
        throw SpectrumMismatch("clustered spectrum has " + std::to_string(ds.total()) +
                               " eigenvalues, spectrum has " + std::to_string(s.size()));
    using std::abs;
    for (const auto& l : ds.levels()) {
        const auto members = s.eigenvalues.segment(l.offset, l.degeneracy);
        if (abs(members.minCoeff() - l.energy) > ds.tolerance() * l.degeneracy ||
            abs(members.maxCoeff() - l.energy) > ds.tolerance() * l.degeneracy)
            throw SpectrumMismatch("level at energy " + std::to_string(static_cast<double>(l.energy)) +
                                   " does not match the spectrum");
    }
}

} // namespace ctqw

#endif // CTQW_SPECTRUM_HPP
