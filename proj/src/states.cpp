#include "eprsteer/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "eprsteer/bounds.hpp"
#include "eprsteer/errors.hpp"
#include "eprsteer/random.hpp"
#include "optimize.hpp"

namespace eprsteer {

namespace {

const ComplexMatrix& singlet_projector() {
    static const ComplexMatrix p = [] {
        ComplexMatrix m(4);
        m(1, 1) = 0.5;
        m(2, 2) = 0.5;
        m(1, 2) = -0.5;
        m(2, 1) = -0.5;
        return m;
    }();
    return p;
}

// Root fidelity between ρ and W_μ using √W_μ = a P + b (I − P).
double werner_root_fidelity(const ComplexMatrix& rho, double mu) {
    const double a = std::sqrt((1.0 + 3.0 * mu) / 4.0);
    const double b = std::sqrt((1.0 - mu) / 4.0);
    const ComplexMatrix sqrt_w = (a - b) * singlet_projector() + b * ComplexMatrix::identity(4);
    ComplexMatrix inner = sqrt_w * rho * sqrt_w;
    inner = 0.5 * (inner + inner.adjoint());
    double root = 0.0;
    for (double l : detail::jacobi_eigen({inner.entries().begin(), inner.entries().end()}, 4).values)
        root += std::sqrt(std::max(l, 0.0));
    return std::min(root, 1.0);
}

// Root fidelity is jointly concave, hence unimodal in μ on [0, 1]; Brent's
// method brackets the maximizer to ~1e-8 without a preliminary grid.
WernerFit fit_mu(const ComplexMatrix& rho) {
    const auto [mu, neg_f] = boost::math::tools::brent_find_minima(
        [&](double m) { return -werner_root_fidelity(rho, m); }, 0.0, 1.0, std::numeric_limits<double>::digits / 2);
    double best_mu = mu, best_f = -neg_f;
    // The interior search never evaluates the endpoints themselves.
    for (double edge : {0.0, 1.0}) {
        const double f = werner_root_fidelity(rho, edge);
        if (f > best_f) {
            best_f = f;
            best_mu = edge;
        }
    }
    return {best_mu, best_f * best_f};
}

ComplexMatrix rz(double a) {
    return ComplexMatrix(2, {std::polar(1.0, -a / 2), 0.0, 0.0, std::polar(1.0, a / 2)});
}

ComplexMatrix ry(double b) {
    const double c = std::cos(b / 2), s = std::sin(b / 2);
    return ComplexMatrix(2, {c, -s, s, c});
}

}  // namespace

WernerParameter::WernerParameter(double mu) : mu_(mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("Werner parameter mu must lie in [0, 1], got " + std::to_string(mu));
}

DensityMatrix singlet() { return DensityMatrix(singlet_projector()); }

DensityMatrix werner(WernerParameter mu) {
    const double m = mu.value();
    return DensityMatrix(m * singlet_projector() + ((1.0 - m) / 4.0) * ComplexMatrix::identity(4));
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    return ComplexMatrix(2, {s, s, s, -s});
}

DensityMatrix prepare_via_gate() {
    return conjugate(kron(hadamard(), ComplexMatrix::identity(2)), singlet());
}

DensityMatrix depolarize_one_sided(const DensityMatrix& rho, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("depolarizing strength q must lie in [0, 1], got " + std::to_string(q));
    const auto bob = partial_trace(rho, Subsystem::second);
    const ComplexMatrix replaced = kron(0.5 * ComplexMatrix::identity(2), bob.matrix());
    return DensityMatrix((1.0 - q) * rho.matrix() + q * replaced);
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DomainError("concurrence requires a two-qubit state");
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    const auto sqrt_rho =
        spectral_function(eigh(rho.matrix()), [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
    ComplexMatrix sqrt_conj(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) sqrt_conj(r, c) = std::conj(sqrt_rho(r, c));
    // M M† = √ρ ρ̃ √ρ. The singular values of M, taken from the Hermitian
    // dilation [[0, M], [M†, 0]], avoid square roots of rounding noise.
    const ComplexMatrix m = sqrt_rho * yy * sqrt_conj;
    std::vector<Complex> dilation(64, 0.0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            dilation[static_cast<std::size_t>(r * 8 + c + 4)] = m(r, c);
            dilation[static_cast<std::size_t>((c + 4) * 8 + r)] = std::conj(m(r, c));
        }
    const auto ev = detail::jacobi_eigen(std::move(dilation), 8).values;
    std::array<double, 4> lam{};
    for (std::size_t i = 0; i < 4; ++i) lam[i] = std::max(ev[7 - i], 0.0);
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double tangle(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return c * c;
}

double linear_entropy(const DensityMatrix& rho) {
    const double d = rho.dim();
    return std::clamp(d / (d - 1.0) * (1.0 - rho.purity()), 0.0, 1.0);
}

WernerFit fit_werner_parameter(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DomainError("Werner fit requires a two-qubit state");
    return fit_mu(rho.matrix());
}

ComplexMatrix euler_unitary(double alpha, double beta, double gamma) { return rz(alpha) * ry(beta) * rz(gamma); }

DensityMatrix apply_local_correction(const DensityMatrix& rho, const ComplexMatrix& unitary) {
    return conjugate(kron(unitary, ComplexMatrix::identity(2)), rho);
}

LocalCorrection find_local_correction(const DensityMatrix& rho, std::uint64_t seed, int restarts) {
    if (rho.dim() != 4) throw DomainError("local correction requires a two-qubit state");
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const detail::Objective cost = [&](std::span<const double> p) {
        const ComplexMatrix u = kron(euler_unitary(p[0], p[1], p[2]), id2);
        return 1.0 - fit_mu(u * rho.matrix() * u.adjoint()).fidelity;
    };

    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    detail::MinimizeResult best;
    best.value = 2.0;
    for (int r = 0; r <= restarts; ++r) {
        std::vector<double> start{0.0, 0.0, 0.0};
        if (r > 0)
            for (auto& a : start) a = angle(rng);
        auto res = detail::nelder_mead(cost, start, 0.4, 1e-3, 500);
        if (res.value < best.value) best = std::move(res);
    }
    // Polish the best basin twice; a fresh simplex recovers from collapse.
    best = detail::nelder_mead(cost, best.x, 0.02, 1e-9, 4000);
    best = detail::nelder_mead(cost, best.x, 0.002, 1e-10, 4000);

    LocalCorrection out;
    out.unitary = euler_unitary(best.x[0], best.x[1], best.x[2]);
    const auto corrected = apply_local_correction(rho, out.unitary);
    const auto fit = fit_mu(corrected.matrix());
    out.mu_hat = fit.mu;
    out.residual_cost = std::max(0.0, 1.0 - fit.fidelity);
    return out;
}

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::separable: return "separable";
        case Regime::entangled_unsteerable: return "entangled_unsteerable";
        case Regime::steerable_many: return "steerable_many";
        case Regime::steerable_n6: return "steerable_n6";
        case Regime::steerable_n3: return "steerable_n3";
        case Regime::chsh_violating: return "chsh_violating";
    }
    return "separable";
}

bool unequivocally_bell_local(WernerParameter mu) { return mu.value() < kBellLocalThreshold; }

Regime classify(WernerParameter mu) {
    const double m = mu.value();
    if (m <= 1.0 / 3.0) return Regime::separable;
    if (m <= 0.5) return Regime::entangled_unsteerable;
    if (m <= analytic_bound(6)) return Regime::steerable_many;
    if (m <= analytic_bound(3)) return Regime::steerable_n6;
    if (m <= 1.0 / std::numbers::sqrt2) return Regime::steerable_n3;
    return Regime::chsh_violating;
}

StateCharacter characterize(const DensityMatrix& rho, std::uint64_t seed) {
    StateCharacter s;
    s.tangle = tangle(rho);
    s.linear_entropy = linear_entropy(rho);
    s.mu_fit = find_local_correction(rho, seed).mu_hat;
    s.regime = classify(WernerParameter(std::clamp(s.mu_fit, 0.0, 1.0)));
    return s;
}

}  // namespace eprsteer
