#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eprsteer/bounds.hpp"
#include "eprsteer/errors.hpp"
#include "eprsteer/protocol.hpp"
#include "eprsteer/states.hpp"
#include "test_support.hpp"

using namespace eprsteer;

namespace {

// Correlation from the outcome projectors (I ± a·σ)/2 ⊗ (I ± b·σ)/2.
double projector_correlation(const DensityMatrix& rho, const BlochVector& a, const BlochVector& b) {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    double e = 0.0;
    for (int sa : {1, -1})
        for (int sb : {1, -1}) {
            const ComplexMatrix pa = 0.5 * (id + static_cast<double>(sa) * pauli_along(a));
            const ComplexMatrix pb = 0.5 * (id + static_cast<double>(sb) * pauli_along(b));
            e += sa * sb * rho.expectation(kron(pa, pb));
        }
    return e;
}

}  // namespace

TEST_CASE("honest Alice reaches S_n = μ") {
    for (int i = 0; i <= 20; ++i) {
        const double mu = i * 0.05;
        for (int n : supported_setting_counts()) {
            const auto r = honest_steering(werner(mu), scheme_axes(n));
            CHECK(std::abs(r.s_value - mu) <= 1e-12);
            CHECK(r.per_setting.size() == static_cast<std::size_t>(n));
            for (double e : r.per_setting) CHECK(std::abs(e - mu) <= 1e-12);
            CHECK(r.bound == doctest::Approx(analytic_bound(n)).epsilon(1e-10));
            CHECK(r.violated == (mu > analytic_bound(n) + kViolationMargin));
        }
    }
}

TEST_CASE("steering hierarchy of Werner states") {
    auto violated = [](double mu, int n) { return honest_steering(werner(mu), scheme_axes(n)).violated; };
    for (int n : supported_setting_counts()) CHECK(violated(0.84, n));
    CHECK_FALSE(violated(0.67, 2));
    for (int n : {3, 4, 6, 10}) CHECK(violated(0.67, n));
    CHECK(violated(0.6, 3));
    CHECK(violated(0.57, 6));
    CHECK(violated(0.57, 10));
    CHECK_FALSE(violated(0.57, 3));
    CHECK_FALSE(violated(0.57, 4));
    for (int n : supported_setting_counts()) CHECK_FALSE(violated(0.45, n));
    // Exactly at the bound: not a violation.
    CHECK_FALSE(honest_steering(werner(analytic_bound(3)), scheme_axes(3)).violated);
    CHECK(honest_steering(werner(std::nextafter(analytic_bound(3), 1.0) + 2e-12), scheme_axes(3)).violated);
}

TEST_CASE("cheating ensembles") {
    const std::vector<std::pair<int, DirectionKind>> optimal{{2, DirectionKind::dual},
                                                            {3, DirectionKind::dual},
                                                            {4, DirectionKind::dual},
                                                            {6, DirectionKind::vertex},
                                                            {10, DirectionKind::vertex}};
    for (const auto& [n, kind] : optimal) {
        const auto r = cheat_steering(make_ensemble(n, kind), scheme_axes(n));
        CHECK(std::abs(r.s_value - analytic_bound(n)) <= 1e-12);
        CHECK_FALSE(r.violated);
    }
    // Suboptimal pairings fall short.
    CHECK(cheat_steering(make_ensemble(3, DirectionKind::vertex), scheme_axes(3)).s_value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(cheat_steering(make_ensemble(6, DirectionKind::dual), scheme_axes(6)).s_value ==
          doctest::Approx(0.491123).epsilon(1e-6));
    CHECK(cheat_steering(make_ensemble(10, DirectionKind::dual), scheme_axes(10)).s_value ==
          doctest::Approx(0.491123).epsilon(1e-6));
}

TEST_CASE("random ensembles never beat the bound") {
    Rng rng(2718);
    std::uniform_int_distribution<int> size(1, 64);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = supported_setting_counts()[static_cast<std::size_t>(trial) % 5];
        const int m = size(rng);
        std::vector<BlochVector> states;
        std::vector<double> weights;
        double total = 0.0;
        for (int j = 0; j < m; ++j) {
            states.push_back(random_unit_vector(rng));
            weights.push_back(unit(rng));
            total += weights.back();
        }
        for (auto& w : weights) w /= total;
        weights.back() = 1.0;
        for (int j = 0; j + 1 < m; ++j) weights.back() -= weights[static_cast<std::size_t>(j)];
        const LhsEnsemble e(states, weights);
        CHECK(cheat_steering(e, scheme_axes(n)).s_value <= analytic_bound(n) + 1e-9);
        // Any other deterministic rule does no better.
        const LhsEnsemble r(states, weights, [&](const BlochVector& v, const BlochVector& u) {
            return (v.x + 2 * u.y - u.z) >= 0 ? 1 : -1;
        });
        CHECK(cheat_steering(r, scheme_axes(n)).s_value <= analytic_bound(n) + 1e-9);
    }
}

TEST_CASE("ensemble validation") {
    CHECK_THROWS_AS(LhsEnsemble({}, {}), DomainError);
    CHECK_THROWS_AS(LhsEnsemble({{1, 0, 0}}, {0.5}), DomainError);
    CHECK_THROWS_AS(LhsEnsemble({{1, 0, 0}, {0, 1, 0}}, {1.0}), DomainError);
    CHECK_THROWS_AS(LhsEnsemble({{0.5, 0, 0}}, {1.0}), DomainError);
    CHECK_THROWS_AS(LhsEnsemble({{1, 0, 0}, {0, 1, 0}}, {1.5, -0.5}), DomainError);
    CHECK(more_likely_outcome({1, 0, 0}, {0, 1, 0}) == 1);
    CHECK(more_likely_outcome({0, -1, 0}, {0, 1, 0}) == -1);
}

TEST_CASE("correlations") {
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        const auto rho = eprsteer::testing::random_state(4, rng);
        const auto a = random_unit_vector(rng), b = random_unit_vector(rng);
        CHECK(std::abs(correlation(rho, a, b) - projector_correlation(rho, a, b)) <= 1e-12);
    }
    for (double mu : {0.0, 0.4, 1.0}) {
        const auto t = correlation_matrix(werner(mu));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(std::abs(t[r][c] - (r == c ? -mu : 0.0)) <= 1e-14);
    }
}

TEST_CASE("CHSH") {
    const auto canon = chsh_value(singlet(), canonical_chsh_settings());
    CHECK(canon.b_value == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-14));
    CHECK(canon.violated);

    for (double mu : {0.0, 0.5, 0.7, 0.71, 0.8, 1.0}) {
        const auto best = chsh_max(werner(mu));
        CHECK(best.b_value == doctest::Approx(2.0 * std::numbers::sqrt2 * mu).epsilon(1e-13));
        CHECK(best.violated == (mu > 1.0 / std::numbers::sqrt2));
        CHECK(chsh_value(werner(mu), best.settings).b_value == doctest::Approx(best.b_value).epsilon(1e-12));
    }
    CHECK(chsh_max(werner(0.8)).b_value == doctest::Approx(2.262741699796952).epsilon(1e-14));

    Rng rng(15);
    for (int i = 0; i < 6; ++i) {
        const auto rho = eprsteer::testing::random_state(4, rng);
        const auto closed = chsh_max(rho);
        const auto searched = chsh_max_search(rho, static_cast<std::uint64_t>(i));
        CHECK(std::abs(closed.b_value - searched.b_value) <= 1e-6);
        CHECK(std::abs(chsh_value(rho, closed.settings).b_value - closed.b_value) <= 1e-10);
    }
}
