#include "eprsteer/bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "eprsteer/errors.hpp"
#include "eprsteer/protocol.hpp"

namespace eprsteer {

namespace {

SignVector signs_from_mask(std::uint32_t mask, int n) {
    // Bit k-1 set means A_k = −1; A_1 is fixed to +1.
    SignVector s;
    s.signs.assign(static_cast<std::size_t>(n), 1);
    for (int k = 1; k < n; ++k)
        if (mask & (1u << (k - 1))) s.signs[static_cast<std::size_t>(k)] = -1;
    return s;
}

double signed_mean_length(const MeasurementScheme& scheme, const SignVector& a) {
    BlochVector sum;
    for (int k = 0; k < scheme.n(); ++k) sum += static_cast<double>(a.signs[static_cast<std::size_t>(k)]) * scheme.axis(k);
    return sum.norm() / scheme.n();
}

}  // namespace

std::string_view method_name(BoundMethod m) { return m == BoundMethod::brute_force ? "brute_force" : "analytic"; }

SteeringBound steering_bound(const MeasurementScheme& scheme) {
    const int n = scheme.n();
    if (n > kMaxSearchSettings)
        throw DomainError("exhaustive search refuses n = " + std::to_string(n) + " (limit " +
                          std::to_string(kMaxSearchSettings) + ")");

    const std::uint32_t count = 1u << (n - 1);
    BlochVector sum;
    for (const auto& u : scheme.axes()) sum += u;

    double best = -1.0;
    std::vector<std::uint32_t> best_masks;
    std::uint32_t gray = 0;
    for (std::uint32_t i = 0;; ++i) {
        const double len = sum.norm();
        if (len > best * (1.0 + 1e-12)) {
            best = len;
            best_masks.assign(1, gray);
        } else if (len >= best * (1.0 - 1e-12)) {
            best_masks.push_back(gray);
        }
        if (i + 1 == count) break;
        // Next Gray code flips exactly one sign: bit countr_zero(i+1).
        const int bit = std::countr_zero(i + 1);
        gray ^= 1u << bit;
        const auto& u = scheme.axis(bit + 1);
        sum += (gray & (1u << bit)) ? -2.0 * u : 2.0 * u;
    }

    SteeringBound out;
    out.n = n;
    out.method = BoundMethod::brute_force;
    // Drop tie candidates the running sum let in, then re-evaluate exactly.
    double exact_best = 0.0;
    std::vector<SignVector> candidates;
    for (auto m : best_masks) {
        auto s = signs_from_mask(m, n);
        exact_best = std::max(exact_best, signed_mean_length(scheme, s));
        candidates.push_back(std::move(s));
    }
    for (auto& s : candidates) {
        if (signed_mean_length(scheme, s) < exact_best * (1.0 - 1e-12)) continue;
        SignVector neg = s;
        for (auto& a : neg.signs) a = -a;
        out.maximizers.push_back(std::move(s));
        out.maximizers.push_back(std::move(neg));
    }
    out.value = exact_best;
    return out;
}

double analytic_bound(int n) {
    constexpr double theta = std::numbers::pi / 5.0;
    const double sqrt5 = std::sqrt(5.0);
    switch (n) {
        case 2: return 1.0 / std::numbers::sqrt2;
        case 3:
        case 4: return std::numbers::inv_sqrt3;
        case 6: {
            const double side = 4.0 / std::sqrt(10.0 + 2.0 * sqrt5);
            const double sec = 1.0 / std::cos(1.5 * theta);
            return 1.0 - (5.0 * side / 12.0) * std::sqrt(4.0 - sec * sec);
        }
        case 10: {
            const double side = 4.0 / (std::sqrt(15.0) + std::numbers::sqrt3);
            return 1.0 - 0.1 * (1.0 + std::tan(2.0 * theta) / std::sin(theta)) * std::sqrt(9.0 * side * side - 4.0);
        }
        default:
            throw DomainError("no closed-form bound for n = " + std::to_string(n) + "; supported values are 2, 3, 4, 6, 10");
    }
}

double verify_tightness(const MeasurementScheme& scheme, const LhsEnsemble& ensemble) {
    return cheat_steering(ensemble, scheme).s_value - steering_bound(scheme).value;
}

}  // namespace eprsteer
