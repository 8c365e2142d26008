#pragma once

// Random generators and independent numerical oracles for the unit tests.

#include <Eigen/Dense>

#include <random>

#include "eprsteer/linalg.hpp"
#include "eprsteer/random.hpp"

namespace eprsteer::testing {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) e(r, c) = m(r, c);
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(static_cast<int>(e.rows()));
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) m(r, c) = e(r, c);
    return m;
}

inline ComplexMatrix random_hermitian(int dim, Rng& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = Complex{g(rng), g(rng)};
    return 0.5 * (m + m.adjoint());
}

/// Ginibre-induced random density matrix of full rank.
inline DensityMatrix random_state(int dim, Rng& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = Complex{g(rng), g(rng)};
    ComplexMatrix p = m * m.adjoint();
    return DensityMatrix((1.0 / p.trace().real()) * p);
}

/// Haar-ish random 4×4 unitary from a QR decomposition.
inline ComplexMatrix random_unitary4(Rng& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = Complex{g(rng), g(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return from_eigen(qr.householderQ() * Eigen::MatrixXcd::Identity(4, 4));
}

/// Ascending eigenvalues by Eigen's self-adjoint solver.
inline std::vector<double> oracle_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
}

}  // namespace eprsteer::testing
