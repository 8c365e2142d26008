#pragma once

// Steering parameter for honest and dishonest Alices, and Bell-CHSH values.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "eprsteer/bounds.hpp"
#include "eprsteer/geometry.hpp"
#include "eprsteer/linalg.hpp"

namespace eprsteer {

/// Alice's announcement A ∈ {−1, +1} given the state she sent and Bob's axis.
using ResponseRule = std::function<int(const BlochVector& state, const BlochVector& axis)>;

/// sign(v·u): the more likely outcome of Bob's measurement; +1 on an exact tie.
int more_likely_outcome(const BlochVector& state, const BlochVector& axis);

/// A dishonest Alice's full strategy: pure states sent with given weights
/// plus a deterministic announcement rule.
class LhsEnsemble {
public:
    LhsEnsemble(std::vector<BlochVector> states, std::vector<double> weights,
                ResponseRule rule = more_likely_outcome);

    static LhsEnsemble uniform(std::vector<BlochVector> states, ResponseRule rule = more_likely_outcome);

    std::size_t size() const { return states_.size(); }
    const std::vector<BlochVector>& states() const { return states_; }
    const std::vector<double>& weights() const { return weights_; }
    int respond(std::size_t j, const BlochVector& axis) const { return rule_(states_[j], axis); }

private:
    std::vector<BlochVector> states_;
    std::vector<double> weights_;
    ResponseRule rule_;
};

/// Uniform ensemble over the figure's vertex or dual directions with the
/// more-likely-outcome rule. For the optimal pairings (dual for n ≤ 4,
/// vertex for n = 6, 10) no state is orthogonal to any axis.
LhsEnsemble make_ensemble(int n, DirectionKind kind);

/// Violation flags require clearing a bound by more than rounding noise, so a
/// state sitting exactly on a threshold is not reported as violating.
inline constexpr double kViolationMargin = 1e-12;

struct SteeringReport {
    int n = 0;
    double s_value = 0.0;
    double bound = 0.0;
    bool violated = false;
    std::vector<double> per_setting;
};

/// Builds a report from per-setting correlations; s_value is their mean.
SteeringReport make_steering_report(std::vector<double> per_setting, double bound);

/// Honest Alice measures along −u_k and announces her outcome:
/// per_setting[k] = Tr[(σ(−u_k) ⊗ σ(u_k)) ρ].
SteeringReport honest_steering(const DensityMatrix& rho, const MeasurementScheme& scheme);

/// per_setting[k] = Σ_j w_j A_k(j) (v_j · u_k).
SteeringReport cheat_steering(const LhsEnsemble& ensemble, const MeasurementScheme& scheme);

/// E(a, b) = Tr[(σ_a ⊗ σ_b) ρ].
double correlation(const DensityMatrix& rho, const BlochVector& a, const BlochVector& b);

/// T_ij = Tr[(σ_i ⊗ σ_j) ρ].
using CorrelationMatrix = std::array<std::array<double, 3>, 3>;
CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

struct ChshSettings {
    BlochVector a1, a2, b1, b2;
};

struct ChshReport {
    double b_value = 0.0;
    ChshSettings settings;
    bool violated = false;
};

/// B = |E(a1,b1) + E(a1,b2) + E(a2,b1) − E(a2,b2)|.
ChshReport chsh_value(const DensityMatrix& rho, const ChshSettings& settings);

/// Singlet-optimal settings: a = z, x; b = −(z+x)/√2, (x−z)/√2.
ChshSettings canonical_chsh_settings();

/// Maximal B = 2√(t1 + t2), with t1 ≥ t2 the two largest eigenvalues of TᵀT,
/// together with settings that attain it.
ChshReport chsh_max(const DensityMatrix& rho);

/// Direct maximization of B over all four axes (Nelder–Mead from seeded
/// random starts). Used to cross-check chsh_max.
ChshReport chsh_max_search(const DensityMatrix& rho, std::uint64_t seed, int restarts = 8);

}  // namespace eprsteer
