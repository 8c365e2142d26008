#pragma once

#include <string_view>
#include <vector>

#include "eprsteer/geometry.hpp"

namespace eprsteer {

class LhsEnsemble;

/// Alice's declared results A_k ∈ {−1, +1}, one per setting.
struct SignVector {
    std::vector<int> signs;
    friend bool operator==(const SignVector&, const SignVector&) = default;
};

enum class BoundMethod { brute_force, analytic };

std::string_view method_name(BoundMethod m);

struct SteeringBound {
    int n = 0;
    double value = 0.0;
    std::vector<SignVector> maximizers;
    BoundMethod method = BoundMethod::brute_force;
};

/// Largest n accepted by the exhaustive search (2^(n-1) sign vectors).
inline constexpr int kMaxSearchSettings = 24;

/// Maximum over sign vectors A of λ_max((1/n) Σ A_k u_k·σ) = |Σ A_k u_k| / n.
///
/// Enumerates the 2^(n-1) vectors with A_1 = +1 in Gray-code order and adds the
/// global negation of every maximizer. Ties are accepted at a relative
/// tolerance of 1e-12.
SteeringBound steering_bound(const MeasurementScheme& scheme);

/// Closed-form bound for n ∈ {2, 3, 4, 6, 10}.
double analytic_bound(int n);

/// S_n reached by `ensemble` on `scheme` minus the bound. Never positive
/// (beyond rounding); zero for an optimal ensemble.
double verify_tightness(const MeasurementScheme& scheme, const LhsEnsemble& ensemble);

}  // namespace eprsteer
