// Reference computations used only by the tests. None of these go through
// the eigendecomposition, so they check the spectral route independently.
#ifndef CTQW_TESTS_ORACLES_HPP
#define CTQW_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ctqw/network.hpp"

namespace oracle {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;

/// exp(A) by scaling and squaring of a truncated Taylor series.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
    const Plain scaled = a / std::ldexp(1.0, squarings);
    Plain term = Plain::Identity(a.rows(), a.cols());
    Plain sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = (term * scaled / double(k)).eval();
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = (sum * sum).eval();
    return sum;
}

/// Dense Laplacian assembled straight from the edge list.
inline Eigen::MatrixXd laplacian(const ctqw::Network& net) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(net.size(), net.size());
    for (const auto& e : net.edges()) {
        h(e.first - 1, e.second - 1) -= 1;
        h(e.second - 1, e.first - 1) -= 1;
        h(e.first - 1, e.first - 1) += 1;
        h(e.second - 1, e.second - 1) += 1;
    }
    return h;
}

inline MatrixXc quantum_propagator(const ctqw::Network& net, double t) {
    return expm(MatrixXc(laplacian(net).cast<Complex>() * Complex(0, -t)));
}

inline Eigen::MatrixXd classical_propagator(const ctqw::Network& net, double t) {
    return expm(Eigen::MatrixXd(-t * laplacian(net)));
}

/// Cycle Laplacian eigenvalues 2 - 2 cos(2 pi k / N), ascending.
inline std::vector<double> ring_eigenvalues(int n) {
    std::vector<double> e;
    for (int k = 0; k < n; ++k) e.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
    std::sort(e.begin(), e.end());
    return e;
}

/// (1/T) int_0^T pi_{k,j}(t) dt by stepping U(dt) forward and applying the
/// trapezoidal rule. k, j are 1-based.
inline double time_averaged_transition(const ctqw::Network& net, int k, int j, double horizon, double dt) {
    const MatrixXc step = quantum_propagator(net, dt);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(net.size());
    psi(j - 1) = 1.0;
    const auto steps = static_cast<long>(std::llround(horizon / dt));
    double prev = std::norm(psi(k - 1));
    double area = 0;
    for (long s = 0; s < steps; ++s) {
        psi = (step * psi).eval();
        const double cur = std::norm(psi(k - 1));
        area += 0.5 * (prev + cur) * dt;
        prev = cur;
    }
    return area / (dt * double(steps));
}

/// Haar-ish random orthogonal matrix from the QR factorization of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) g(i, k) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

/// Random spanning tree plus `extra` random chords on n nodes.
inline ctqw::Network random_connected(int n, int extra, std::mt19937_64& rng) {
    std::vector<ctqw::Edge> edges;
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> parent(1, v - 1);
        edges.push_back({parent(rng), v});
    }
    std::uniform_int_distribution<int> node(1, n);
    for (int tries = 0; tries < 50 * extra && extra > 0; ++tries) {
        int a = node(rng), b = node(rng);
        if (a == b) continue;
        ctqw::Edge e{std::min(a, b), std::max(a, b)};
        if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
        edges.push_back(e);
        if (--extra == 0) break;
    }
    return ctqw::Network(n, edges);
}

} // namespace oracle

#endif // CTQW_TESTS_ORACLES_HPP
