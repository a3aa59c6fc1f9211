#ifndef CTQW_HAMILTONIAN_HPP
#define CTQW_HAMILTONIAN_HPP

#include <Eigen/Dense>

#include "ctqw/network.hpp"

namespace ctqw {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Connectivity matrix of a network used as the walk generator (rate 1).
///
/// Diagonal entry i is the number of bonds at node i, entry (i,j) is -1 for
/// every bond. It is the negative classical transfer matrix and the quantum
/// Hamiltonian at the same time.
template <typename Scalar = double>
class Hamiltonian {
public:
    using Matrix = MatrixX<Scalar>;

    explicit Hamiltonian(const Network& net) : matrix_(Matrix::Zero(net.size(), net.size())) {
        for (const auto& e : net.edges()) {
            const Eigen::Index i = e.first - 1;
            const Eigen::Index j = e.second - 1;
            matrix_(i, j) = Scalar(-1);
            matrix_(j, i) = Scalar(-1);
            matrix_(i, i) += Scalar(1);
            matrix_(j, j) += Scalar(1);
        }
    }

    const Matrix& matrix() const noexcept { return matrix_; }
    Eigen::Index size() const noexcept { return matrix_.rows(); }
    Scalar operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

    /// Largest diagonal entry, which is also max |H_ij|.
    Scalar max_abs() const { return matrix_.size() ? matrix_.cwiseAbs().maxCoeff() : Scalar(0); }

private:
    Matrix matrix_;
};

template <typename Scalar = double>
Hamiltonian<Scalar> hamiltonian(const Network& net) {
    return Hamiltonian<Scalar>(net);
}

} // namespace ctqw

#endif // CTQW_HAMILTONIAN_HPP
