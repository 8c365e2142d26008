#include "eprsteer/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eprsteer/errors.hpp"
#include "eprsteer/random.hpp"
#include "optimize.hpp"

namespace eprsteer {

namespace {

const std::array<BlochVector, 3> kCartesian{BlochVector{1, 0, 0}, BlochVector{0, 1, 0}, BlochVector{0, 0, 1}};

BlochVector any_orthogonal(const BlochVector& v) {
    const BlochVector trial = std::abs(v.x) < 0.9 ? BlochVector{1, 0, 0} : BlochVector{0, 1, 0};
    return v.cross(trial).normalized();
}

BlochVector from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

int more_likely_outcome(const BlochVector& state, const BlochVector& axis) { return state.dot(axis) >= 0.0 ? 1 : -1; }

LhsEnsemble::LhsEnsemble(std::vector<BlochVector> states, std::vector<double> weights, ResponseRule rule)
    : states_(std::move(states)), weights_(std::move(weights)), rule_(std::move(rule)) {
    if (states_.empty()) throw DomainError("an LHS ensemble needs at least one state");
    if (states_.size() != weights_.size()) throw DomainError("ensemble states and weights differ in length");
    for (const auto& v : states_)
        if (!v.is_unit()) throw DomainError("ensemble states must be pure (unit Bloch vectors)");
    for (double w : weights_)
        if (!(w >= 0.0)) throw DomainError("ensemble weights must be non-negative");
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("ensemble weights must sum to 1");
    if (!rule_) throw DomainError("ensemble response rule is empty");
}

LhsEnsemble LhsEnsemble::uniform(std::vector<BlochVector> states, ResponseRule rule) {
    std::vector<double> w(states.size(), states.empty() ? 0.0 : 1.0 / static_cast<double>(states.size()));
    return LhsEnsemble(std::move(states), std::move(w), std::move(rule));
}

LhsEnsemble make_ensemble(int n, DirectionKind kind) {
    auto dirs = kind == DirectionKind::vertex ? vertex_directions(n) : dual_directions(n);
    const bool optimal = (kind == DirectionKind::dual) == (n <= 4);
    if (optimal) {
        const auto scheme = scheme_axes(n);
        for (const auto& v : dirs.directions)
            for (const auto& u : scheme.axes())
                if (std::abs(v.dot(u)) <= 1e-12)
                    throw InternalError("optimal ensemble has a state orthogonal to a measurement axis");
    }
    return LhsEnsemble::uniform(std::move(dirs.directions));
}

SteeringReport make_steering_report(std::vector<double> per_setting, double bound) {
    SteeringReport r;
    r.n = static_cast<int>(per_setting.size());
    r.s_value = per_setting.empty() ? 0.0
                                    : std::accumulate(per_setting.begin(), per_setting.end(), 0.0) /
                                          static_cast<double>(per_setting.size());
    r.bound = bound;
    r.violated = r.s_value > bound + kViolationMargin;
    r.per_setting = std::move(per_setting);
    return r;
}

double correlation(const DensityMatrix& rho, const BlochVector& a, const BlochVector& b) {
    return rho.expectation(kron(pauli_along(a), pauli_along(b)));
}

SteeringReport honest_steering(const DensityMatrix& rho, const MeasurementScheme& scheme) {
    std::vector<double> per;
    per.reserve(static_cast<std::size_t>(scheme.n()));
    for (const auto& u : scheme.axes()) per.push_back(correlation(rho, -u, u));
    return make_steering_report(std::move(per), steering_bound(scheme).value);
}

SteeringReport cheat_steering(const LhsEnsemble& ensemble, const MeasurementScheme& scheme) {
    std::vector<double> per;
    per.reserve(static_cast<std::size_t>(scheme.n()));
    for (const auto& u : scheme.axes()) {
        double c = 0.0;
        for (std::size_t j = 0; j < ensemble.size(); ++j)
            c += ensemble.weights()[j] * ensemble.respond(j, u) * ensemble.states()[j].dot(u);
        per.push_back(c);
    }
    return make_steering_report(std::move(per), steering_bound(scheme).value);
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
    CorrelationMatrix t{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t[i][j] = correlation(rho, kCartesian[i], kCartesian[j]);
    return t;
}

ChshSettings canonical_chsh_settings() {
    const BlochVector z{0, 0, 1}, x{1, 0, 0};
    const double s = 1.0 / std::numbers::sqrt2;
    return {z, x, -(s * (z + x)), s * (x - z)};
}

ChshReport chsh_value(const DensityMatrix& rho, const ChshSettings& st) {
    const double b = correlation(rho, st.a1, st.b1) + correlation(rho, st.a1, st.b2) +
                     correlation(rho, st.a2, st.b1) - correlation(rho, st.a2, st.b2);
    ChshReport r;
    r.b_value = std::abs(b);
    r.settings = st;
    r.violated = r.b_value > 2.0 + kViolationMargin;
    return r;
}

ChshReport chsh_max(const DensityMatrix& rho) {
    const auto t = correlation_matrix(rho);
    std::vector<Complex> ttt(9, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            ttt[i * 3 + j] = s;
        }
    const auto es = detail::jacobi_eigen(std::move(ttt), 3);
    const auto column = [&](std::size_t k) {
        const auto& v = es.vectors[k];
        return BlochVector{v[0].real(), v[1].real(), v[2].real()}.normalized();
    };
    const double l1 = std::max(es.values[2], 0.0);
    const double l2 = std::max(es.values[1], 0.0);
    const BlochVector c1 = column(2), c2 = column(1);
    const auto apply_t = [&](const BlochVector& b) {
        return BlochVector{t[0][0] * b.x + t[0][1] * b.y + t[0][2] * b.z, t[1][0] * b.x + t[1][1] * b.y + t[1][2] * b.z,
                           t[2][0] * b.x + t[2][1] * b.y + t[2][2] * b.z};
    };

    ChshReport r;
    if (l1 + l2 <= 0.0) {
        r.settings = canonical_chsh_settings();
    } else {
        const BlochVector tc1 = apply_t(c1), tc2 = apply_t(c2);
        const BlochVector a1 = tc1.norm() > 1e-12 ? tc1.normalized() : BlochVector{0, 0, 1};
        const BlochVector a2 = tc2.norm() > 1e-12 ? tc2.normalized() : any_orthogonal(a1);
        const double cos_t = std::sqrt(l1 / (l1 + l2)), sin_t = std::sqrt(l2 / (l1 + l2));
        r.settings = {a1, a2, (cos_t * c1 + sin_t * c2).normalized(), (cos_t * c1 - sin_t * c2).normalized()};
    }
    r.b_value = 2.0 * std::sqrt(l1 + l2);
    r.violated = r.b_value > 2.0 + kViolationMargin;
    return r;
}

ChshReport chsh_max_search(const DensityMatrix& rho, std::uint64_t seed, int restarts) {
    const auto t = correlation_matrix(rho);
    const auto e = [&](const BlochVector& a, const BlochVector& b) {
        double s = 0.0;
        const std::array<double, 3> av{a.x, a.y, a.z}, bv{b.x, b.y, b.z};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) s += av[i] * t[i][j] * bv[j];
        return s;
    };
    const auto settings_of = [](std::span<const double> p) {
        return ChshSettings{from_angles(p[0], p[1]), from_angles(p[2], p[3]), from_angles(p[4], p[5]),
                            from_angles(p[6], p[7])};
    };
    const detail::Objective objective = [&](std::span<const double> p) {
        const auto s = settings_of(p);
        return -std::abs(e(s.a1, s.b1) + e(s.a1, s.b2) + e(s.a2, s.b1) - e(s.a2, s.b2));
    };

    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    detail::MinimizeResult best;
    best.value = 1.0;
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> start(8);
        for (auto& a : start) a = angle(rng);
        auto res = detail::nelder_mead(objective, start, 0.5, 1e-10, 20000);
        // Restart once from the result to escape a collapsed simplex.
        res = detail::nelder_mead(objective, res.x, 0.05, 1e-12, 20000);
        if (res.value < best.value) best = std::move(res);
    }
    return chsh_value(rho, settings_of(best.x));
}

}  // namespace eprsteer
