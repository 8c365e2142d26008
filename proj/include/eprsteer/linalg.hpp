#pragma once

// Small dense complex linear algebra for single- and two-qubit operators.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eprsteer {

using Complex = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kUnitTolerance = 1e-12;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    BlochVector normalized() const;
    BlochVector cross(const BlochVector& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    bool is_unit(double tol = kUnitTolerance) const;

    BlochVector operator-() const { return {-x, -y, -z}; }
    BlochVector& operator+=(const BlochVector& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    friend BlochVector operator+(BlochVector a, const BlochVector& b) { return a += b; }
    friend BlochVector operator-(BlochVector a, const BlochVector& b) { return a += -b; }
    friend BlochVector operator*(double s, const BlochVector& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Row-major square complex matrix of dimension 2 or 4.
class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(2) {}
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::initializer_list<Complex> row_major);
    ComplexMatrix(int dim, std::span<const Complex> row_major);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    Complex& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * dim_ + c)]; }
    const Complex& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * dim_ + c)]; }
    std::span<const Complex> entries() const { return {data_.data(), static_cast<std::size_t>(dim_ * dim_)}; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    bool is_hermitian(double tol = kHermitianTolerance) const;
    double max_abs_diff(const ComplexMatrix& o) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int dim_;
    std::array<Complex, 16> data_{};
};

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascending;
/// vectors[i] is the normalized eigenvector for values[i].
struct EigenSystem {
    std::vector<double> values;
    std::vector<std::vector<Complex>> vectors;
};

namespace detail {
/// Cyclic complex Jacobi on a small n×n Hermitian matrix (row-major).
EigenSystem jacobi_eigen(std::vector<Complex> a, int n);
}  // namespace detail

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// u·σ for a unit Bloch vector.
ComplexMatrix pauli_along(const BlochVector& u);

/// a·σ with no normalization requirement; eigenvalues are ±|a|.
ComplexMatrix bloch_operator(const BlochVector& a);

/// Real eigenvalues of a Hermitian matrix, ascending.
std::vector<double> eig_hermitian(const ComplexMatrix& m);

/// Eigenvalues and eigenvectors of a Hermitian matrix.
EigenSystem eigh(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rebuilds Σ f(λ_i) |v_i⟩⟨v_i| from an eigen-system.
template <class F>
ComplexMatrix spectral_function(const EigenSystem& es, F&& f) {
    const int d = static_cast<int>(es.values.size());
    ComplexMatrix out(d);
    for (int k = 0; k < d; ++k) {
        const double fk = f(es.values[static_cast<std::size_t>(k)]);
        const auto& v = es.vectors[static_cast<std::size_t>(k)];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                out(r, c) += fk * v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]);
    }
    return out;
}

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
/// The stored matrix is symmetrized, (ρ + ρ†)/2, after the Hermiticity check.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& m);

    /// |ψ⟩⟨ψ| for a normalized state vector of length 2 or 4.
    static DensityMatrix pure(std::span<const Complex> psi);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(int r, int c) const { return m_(r, c); }

    /// Re Tr[O ρ].
    double expectation(const ComplexMatrix& observable) const;
    double purity() const;

private:
    ComplexMatrix m_;
};

enum class Subsystem { first, second };

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// U ρ U†.
DensityMatrix conjugate(const ComplexMatrix& u, const DensityMatrix& rho);

enum class FidelityConvention {
    squared_uhlmann,  ///< (Tr√(√ρ σ √ρ))²
    root_uhlmann,     ///< Tr√(√ρ σ √ρ)
};

inline constexpr FidelityConvention kFidelityConvention = FidelityConvention::squared_uhlmann;

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                FidelityConvention convention = kFidelityConvention);

}  // namespace eprsteer
