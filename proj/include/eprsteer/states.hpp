#pragma once

// Two-qubit state models: the Werner family, the gate + depolarizer
// preparation chain, entanglement and mixedness measures, and the local
// unitary that rotates a Werner-like state back onto the family.

#include <cstdint>
#include <string_view>

#include "eprsteer/linalg.hpp"

namespace eprsteer {

/// Singlet weight μ ∈ [0, 1].
class WernerParameter {
public:
    explicit WernerParameter(double mu);
    double value() const { return mu_; }

private:
    double mu_;
};

/// |Ψ⁻⟩⟨Ψ⁻| with |Ψ⁻⟩ = (|01⟩ − |10⟩)/√2.
DensityMatrix singlet();

/// W_μ = μ |Ψ⁻⟩⟨Ψ⁻| + (1 − μ) I/4.
DensityMatrix werner(WernerParameter mu);
inline DensityMatrix werner(double mu) { return werner(WernerParameter(mu)); }

ComplexMatrix hadamard();

/// Ideal output of the entangling gate: (H ⊗ I)|Ψ⁻⟩.
DensityMatrix prepare_via_gate();

/// (1 − q) ρ + q (I/2 ⊗ Tr₁ ρ): depolarizes qubit 1 only.
DensityMatrix depolarize_one_sided(const DensityMatrix& rho, double q);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Squared concurrence.
double tangle(const DensityMatrix& rho);

/// (4/3)(1 − Tr ρ²), normalized to [0, 1].
double linear_entropy(const DensityMatrix& rho);

/// Largest fidelity(ρ, W_μ) over μ ∈ [0, 1], with its maximizer.
struct WernerFit {
    double mu = 0.0;
    double fidelity = 0.0;
};
WernerFit fit_werner_parameter(const DensityMatrix& rho);

/// Rz(alpha) Ry(beta) Rz(gamma).
ComplexMatrix euler_unitary(double alpha, double beta, double gamma);

struct LocalCorrection {
    ComplexMatrix unitary;
    double residual_cost = 0.0;
    double mu_hat = 0.0;
};

inline constexpr int kLocalCorrectionRestarts = 20;

/// Searches for the single-qubit Û minimizing
/// 1 − fidelity((Û ⊗ I) ρ (Û ⊗ I)†, W_μ̂), with μ̂ refit for each candidate.
/// Nelder–Mead over Euler angles from the identity plus `restarts` seeded
/// random starts.
LocalCorrection find_local_correction(const DensityMatrix& rho, std::uint64_t seed,
                                      int restarts = kLocalCorrectionRestarts);

/// (Û ⊗ I) ρ (Û ⊗ I)†.
DensityMatrix apply_local_correction(const DensityMatrix& rho, const ComplexMatrix& unitary);

enum class Regime {
    separable,
    entangled_unsteerable,
    steerable_many,
    steerable_n6,
    steerable_n3,
    chsh_violating,
};

std::string_view regime_name(Regime r);

/// Werner states below this μ violate no Bell inequality at all. Reported
/// as an annotation only; it is not a regime boundary.
inline constexpr double kBellLocalThreshold = 0.6595;

bool unequivocally_bell_local(WernerParameter mu);

/// Regime of W_μ; every threshold is an exclusive lower bound:
/// 1/3 (entangled), 1/2 (steerable with many settings), C_6, C_3 = 1/√3,
/// 1/√2 (CHSH).
Regime classify(WernerParameter mu);

struct StateCharacter {
    double tangle = 0.0;
    double linear_entropy = 0.0;
    double mu_fit = 0.0;
    Regime regime = Regime::separable;
};

/// Tangle, linear entropy and a Werner fit via find_local_correction.
StateCharacter characterize(const DensityMatrix& rho, std::uint64_t seed);

}  // namespace eprsteer
