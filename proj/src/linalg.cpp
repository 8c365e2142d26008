#include "eprsteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eprsteer/errors.hpp"

namespace eprsteer {

namespace {

void require_dim(int dim) {
    if (dim != 2 && dim != 4)
        throw DomainError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

BlochVector BlochVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw DomainError("cannot normalize the zero vector");
    return (1.0 / n) * (*this);
}

bool BlochVector::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> row_major)
    : ComplexMatrix(dim, std::span<const Complex>(row_major.begin(), row_major.size())) {}

ComplexMatrix::ComplexMatrix(int dim, std::span<const Complex> row_major) : dim_(dim) {
    require_dim(dim);
    if (row_major.size() != static_cast<std::size_t>(dim * dim))
        throw DomainError("expected " + std::to_string(dim * dim) + " entries, got " +
                          std::to_string(row_major.size()));
    std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
    if (o.dim_ != dim_) throw DomainError("dimension mismatch in comparison");
    double m = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(dim_ * dim_); ++i)
        m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw DomainError("dimension mismatch in addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw DomainError("dimension mismatch in subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DomainError("dimension mismatch in product");
    const int d = a.dim();
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (int c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

namespace detail {

EigenSystem jacobi_eigen(std::vector<Complex> a, int n) {
    const auto at = [n](int r, int c) { return static_cast<std::size_t>(r * n + c); };
    std::vector<Complex> v(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i) v[at(i, i)] = 1.0;

    double scale = 0.0;
    for (const auto& x : a) scale += std::norm(x);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a[at(p, q)]);
        if (off <= 1e-34 * scale || off == 0.0) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex b = a[at(p, q)];
                const double mag = std::abs(b);
                if (mag == 0.0) continue;
                // Phase e^{iφ} of the pivot; V = diag(1, e^{-iφ}) · real rotation.
                const Complex phase = b / mag;
                const double app = a[at(p, p)].real();
                const double aqq = a[at(q, q)].real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex vpp = c, vpq = s;
                const Complex vqp = -s * std::conj(phase), vqq = c * std::conj(phase);

                // A ← A V (columns p, q)
                for (int r = 0; r < n; ++r) {
                    const Complex arp = a[at(r, p)], arq = a[at(r, q)];
                    a[at(r, p)] = arp * vpp + arq * vqp;
                    a[at(r, q)] = arp * vpq + arq * vqq;
                }
                // A ← V† A (rows p, q)
                for (int c2 = 0; c2 < n; ++c2) {
                    const Complex apc = a[at(p, c2)], aqc = a[at(q, c2)];
                    a[at(p, c2)] = std::conj(vpp) * apc + std::conj(vqp) * aqc;
                    a[at(q, c2)] = std::conj(vpq) * apc + std::conj(vqq) * aqc;
                }
                a[at(p, q)] = 0.0;
                a[at(q, p)] = 0.0;
                a[at(p, p)] = a[at(p, p)].real();
                a[at(q, q)] = a[at(q, q)].real();
                // E ← E V
                for (int r = 0; r < n; ++r) {
                    const Complex erp = v[at(r, p)], erq = v[at(r, q)];
                    v[at(r, p)] = erp * vpp + erq * vqp;
                    v[at(r, q)] = erp * vpq + erq * vqq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[at(i, i)].real() < a[at(j, j)].real(); });

    EigenSystem es;
    for (int k : order) {
        es.values.push_back(a[at(k, k)].real());
        std::vector<Complex> col(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = v[at(r, k)];
        es.vectors.push_back(std::move(col));
    }
    return es;
}

}  // namespace detail

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, -kI, kI, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix bloch_operator(const BlochVector& a) {
    return ComplexMatrix(2, {Complex{a.z, 0.0}, Complex{a.x, -a.y}, Complex{a.x, a.y}, Complex{-a.z, 0.0}});
}

ComplexMatrix pauli_along(const BlochVector& u) {
    if (!u.is_unit())
        throw DomainError("measurement axis must be a unit vector (|u| = " + std::to_string(u.norm()) + ")");
    return bloch_operator(u);
}

std::vector<double> eig_hermitian(const ComplexMatrix& m) {
    if (!m.is_hermitian()) throw DomainError("eig_hermitian: matrix is not Hermitian");
    if (m.dim() == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double mean = 0.5 * (a + d);
        const double half = 0.5 * (a - d);
        const double r = std::sqrt(half * half + std::norm(m(0, 1)));
        return {mean - r, mean + r};
    }
    return eigh(m).values;
}

EigenSystem eigh(const ComplexMatrix& m) {
    if (!m.is_hermitian()) throw DomainError("eigh: matrix is not Hermitian");
    const auto e = m.entries();
    return detail::jacobi_eigen(std::vector<Complex>(e.begin(), e.end()), m.dim());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) throw DomainError("kron: both factors must be 2x2");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : m_(m.dim()) {
    if (!m.is_hermitian(kHermitianTolerance)) throw DomainError("density matrix is not Hermitian");
    m_ = 0.5 * (m + m.adjoint());
    for (int i = 0; i < m_.dim(); ++i) m_(i, i) = m_(i, i).real();
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance)
        throw DomainError("density matrix trace is " + std::to_string(tr) + ", expected 1");
    const auto ev = eig_hermitian(m_);
    if (ev.front() < -kPositivityTolerance)
        throw DomainError("density matrix has negative eigenvalue " + std::to_string(ev.front()));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    const int d = static_cast<int>(psi.size());
    require_dim(d);
    double nrm = 0.0;
    for (const auto& a : psi) nrm += std::norm(a);
    if (std::abs(nrm - 1.0) > kTraceTolerance) throw DomainError("state vector is not normalized");
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            m(r, c) = psi[static_cast<std::size_t>(r)] * std::conj(psi[static_cast<std::size_t>(c)]);
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix((1.0 / dim) * ComplexMatrix::identity(dim));
}

double DensityMatrix::expectation(const ComplexMatrix& observable) const {
    return (observable * m_).trace().real();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4) throw DomainError("partial_trace requires a two-qubit state");
    ComplexMatrix out(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                out(i, j) += keep == Subsystem::first ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
    return DensityMatrix(out);
}

DensityMatrix conjugate(const ComplexMatrix& u, const DensityMatrix& rho) {
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, FidelityConvention convention) {
    if (rho.dim() != sigma.dim()) throw DomainError("fidelity: dimension mismatch");
    const auto sqrt_rho = spectral_function(eigh(rho.matrix()), [](double l) { return std::sqrt(std::max(l, 0.0)); });
    ComplexMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    inner = 0.5 * (inner + inner.adjoint());
    double root = 0.0;
    for (double l : eig_hermitian(inner)) root += std::sqrt(std::max(l, 0.0));
    root = std::clamp(root, 0.0, 1.0);
    return convention == FidelityConvention::squared_uhlmann ? root * root : root;
}

}  // namespace eprsteer
