#ifndef CTQW_ANALYTIC_HPP
#define CTQW_ANALYTIC_HPP

#include <cmath>
#include <string>
#include <vector>

#include "ctqw/network.hpp"
#include "ctqw/spectrum.hpp"

namespace ctqw {

/// Closed-form clustered spectrum of the n-node star: {(0,1), (1,n-2), (n,1)}.
template <typename Scalar = double>
DegeneracySpectrum<Scalar> analytic_star_spectrum(int n) {
    if (n < 3) throw InvalidParameter("star needs n >= 3, got " + std::to_string(n));
    const Scalar size(n);
    return DegeneracySpectrum<Scalar>({{Scalar(0), 1}, {Scalar(1), n - 2}, {size, 1}},
                                      default_cluster_tolerance(size));
}

/// Closed-form clustered spectrum of a star with (n-1)/2 arms of two nodes.
template <typename Scalar = double>
DegeneracySpectrum<Scalar> analytic_arm_star_spectrum(int n) {
    if (n < 5 || n % 2 == 0)
        throw InvalidParameter("two-node arm star needs odd n >= 5, got " + std::to_string(n));
    using std::sqrt;
    const Scalar size(n);
    const Scalar root5 = sqrt(Scalar(5));
    const Scalar disc = sqrt(size * size - Scalar(6) * size + Scalar(25));
    const int d = (n - 3) / 2;
    // (3 - sqrt5)/2 < (N+5-disc)/4 < (3 + sqrt5)/2 < (N+5+disc)/4 holds for every odd N >= 5
    std::vector<std::pair<Scalar, int>> levels{
        {Scalar(0), 1},
        {(Scalar(3) - root5) / Scalar(2), d},
        {(size + Scalar(5) - disc) / Scalar(4), 1},
        {(Scalar(3) + root5) / Scalar(2), d},
        {(size + Scalar(5) + disc) / Scalar(4), 1},
    };
    return DegeneracySpectrum<Scalar>(levels, default_cluster_tolerance(levels.back().first));
}

struct DegeneracyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct DendrimerReport {
    int generations = 0;
    int size = 0;
    std::vector<DegeneracyCheck> checks;
    int nondegenerate_levels = 0;
    int degenerate_eigenvalues = 0;
    // observed degeneracies of E = 1, 2 - sqrt3, 2 + sqrt3 (0 when absent)
    int degeneracy_one = 0;
    int degeneracy_lower = 0;
    int degeneracy_upper = 0;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Checks a clustered dendrimer spectrum against its known degeneracy
/// structure. The observed degeneracies of E = 1 and E = 2 -/+ sqrt3 are
/// reported, not asserted.
template <typename Scalar>
DendrimerReport dendrimer_degeneracy_check(const DegeneracySpectrum<Scalar>& ds, int generations) {
    const int n = dendrimer_size(generations);
    if (ds.total() != n)
        throw SpectrumMismatch("spectrum has " + std::to_string(ds.total()) + " eigenvalues, a G=" +
                               std::to_string(generations) + " dendrimer has " + std::to_string(n));
    using std::sqrt;
    DendrimerReport r;
    r.generations = generations;
    r.size = n;
    for (const auto& l : ds.levels()) {
        if (l.degeneracy == 1)
            ++r.nondegenerate_levels;
        else
            r.degenerate_eigenvalues += l.degeneracy;
    }

    // eigenvalues of these spectra are O(1..6); the cluster tolerance is far below the level spacing
    const Scalar match = Scalar(1e-6);
    const auto* one = ds.find(Scalar(1), match);
    const auto* lower = ds.find(Scalar(2) - sqrt(Scalar(3)), match);
    const auto* upper = ds.find(Scalar(2) + sqrt(Scalar(3)), match);
    r.degeneracy_one = one ? one->degeneracy : 0;
    r.degeneracy_lower = lower ? lower->degeneracy : 0;
    r.degeneracy_upper = upper ? upper->degeneracy : 0;

    const int expected_simple = generations + 1;
    r.checks.push_back({"nondegenerate level count (E=0 included) equals G+1",
                        r.nondegenerate_levels == expected_simple,
                        std::to_string(r.nondegenerate_levels) + " observed, " +
                            std::to_string(expected_simple) + " expected"});
    r.checks.push_back({"eigenvalue 1 present", one != nullptr,
                        "degeneracy " + std::to_string(r.degeneracy_one)});
    if (generations >= 2) {
        r.checks.push_back({"eigenvalues 2-sqrt3 and 2+sqrt3 present", lower && upper,
                            "degeneracies " + std::to_string(r.degeneracy_lower) + ", " +
                                std::to_string(r.degeneracy_upper)});
        const auto ranked = ds.by_degeneracy();
        bool top3 = ranked.size() >= 3;
        for (std::size_t i = 0; top3 && i < 3; ++i) {
            const Scalar e = ranked[i].energy;
            top3 = (one && e == one->energy) || (lower && e == lower->energy) || (upper && e == upper->energy);
        }
        r.checks.push_back({"1 and 2-/+sqrt3 are the three most degenerate levels", top3, ""});
    }
    r.checks.push_back({"degenerate eigenvalue count equals N-G-1",
                        r.degenerate_eigenvalues == n - expected_simple,
                        std::to_string(r.degenerate_eigenvalues) + " observed"});
    return r;
}

} // namespace ctqw

#endif // CTQW_ANALYTIC_HPP
