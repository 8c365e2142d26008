#include "eprsteer/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eprsteer/errors.hpp"
#include "eprsteer/random.hpp"

namespace eprsteer {

namespace {

constexpr std::array<int, 4> kAliceSign{1, 1, -1, -1};
constexpr std::array<int, 4> kBobSign{1, -1, 1, -1};

ComplexMatrix projector(const BlochVector& axis, int sign) {
    return 0.5 * (ComplexMatrix::identity(2) + static_cast<double>(sign) * pauli_along(axis));
}

std::array<ComplexMatrix, 4> outcome_projectors(const Setting& s) {
    std::array<ComplexMatrix, 4> p;
    for (std::size_t o = 0; o < 4; ++o) p[o] = kron(projector(s.alice, kAliceSign[o]), projector(s.bob, kBobSign[o]));
    return p;
}

double poisson(Rng& rng, double mean) {
    if (mean <= 0.0) return 0.0;
    std::poisson_distribution<long long> d(mean);
    return static_cast<double>(d(rng));
}

CountTable resample(const CountTable& t, Rng& rng) {
    CountTable out = t;
    for (auto& c : out.counts)
        for (auto& v : c) v = poisson(rng, v);
    return out;
}

double standard_deviation(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

bool same_axis(const BlochVector& a, const BlochVector& b) { return (a - b).norm() <= 1e-12; }

// Solves the symmetric positive-definite system G x = b in place; returns
// false when G is numerically singular.
bool cholesky_solve(std::vector<double>& g, std::vector<double>& b, std::size_t n) {
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, g[i * n + i]);
    for (std::size_t j = 0; j < n; ++j) {
        double d = g[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
        if (d <= 1e-10 * scale) return false;
        d = std::sqrt(d);
        g[j * n + j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= g[i * n + k] * g[j * n + k];
            g[i * n + j] = s / d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= g[i * n + k] * b[k];
        b[i] = s / g[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= g[k * n + i] * b[k];
        b[i] = s / g[i * n + i];
    }
    return true;
}

const std::array<ComplexMatrix, 4>& pauli_basis() {
    static const std::array<ComplexMatrix, 4> basis{ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()};
    return basis;
}

// Eigen-clips a Hermitian matrix to the positive cone and renormalizes.
DensityMatrix project_to_state(const ComplexMatrix& m) {
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    auto es = eigh(h);
    double total = 0.0;
    for (auto& l : es.values) {
        l = std::max(l, 0.0);
        total += l;
    }
    if (total <= 0.0) return DensityMatrix::maximally_mixed(4);
    for (auto& l : es.values) l /= total;
    return DensityMatrix(spectral_function(es, [](double l) { return l; }));
}

}  // namespace

double CountTable::total(std::size_t k) const {
    const auto& c = counts[k];
    return c[0] + c[1] + c[2] + c[3];
}

std::string_view method_name(EstimateMethod m) {
    return m == EstimateMethod::analytic_propagation ? "analytic_propagation" : "monte_carlo";
}

OutcomeCounts outcome_probabilities(const DensityMatrix& rho, const Setting& setting) {
    OutcomeCounts p{};
    const auto proj = outcome_projectors(setting);
    for (std::size_t o = 0; o < 4; ++o) p[o] = std::max(0.0, rho.expectation(proj[o]));
    const double sum = p[0] + p[1] + p[2] + p[3];
    if (std::abs(sum - 1.0) > 1e-9) throw InternalError("outcome probabilities do not sum to 1");
    return p;
}

CountTable sample_counts(const DensityMatrix& rho, const std::vector<Setting>& settings, double shots,
                         std::uint64_t seed, double efficiency) {
    if (!(shots >= 1.0)) throw DomainError("shots must be at least 1");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw DomainError("efficiency must lie in (0, 1]");
    if (settings.empty()) throw DomainError("no measurement settings given");
    CountTable t;
    t.settings = settings;
    t.shots_target = shots;
    t.counts.reserve(settings.size());
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto p = outcome_probabilities(rho, settings[k]);
        Rng rng(stream_seed(seed, k));
        OutcomeCounts c{};
        for (std::size_t o = 0; o < 4; ++o) c[o] = poisson(rng, efficiency * shots * p[o]);
        t.counts.push_back(c);
    }
    return t;
}

CountTable expected_counts(const DensityMatrix& rho, const std::vector<Setting>& settings, double shots) {
    if (!(shots > 0.0)) throw DomainError("shots must be positive");
    CountTable t;
    t.settings = settings;
    t.shots_target = shots;
    for (const auto& s : settings) {
        auto p = outcome_probabilities(rho, s);
        for (auto& v : p) v *= shots;
        t.counts.push_back(p);
    }
    return t;
}

std::vector<Setting> steering_settings(const MeasurementScheme& scheme) {
    std::vector<Setting> s;
    for (const auto& u : scheme.axes()) s.push_back({-u, u});
    return s;
}

std::vector<Setting> chsh_measurement_settings(const ChshSettings& s) {
    return {{s.a1, s.b1}, {s.a1, s.b2}, {s.a2, s.b1}, {s.a2, s.b2}};
}

std::vector<Setting> tomography_settings() {
    const std::array<BlochVector, 3> axes{BlochVector{1, 0, 0}, BlochVector{0, 1, 0}, BlochVector{0, 0, 1}};
    std::vector<Setting> s;
    for (const auto& a : axes)
        for (const auto& b : axes) s.push_back({a, b});
    return s;
}

double empirical_correlation(const OutcomeCounts& c) {
    const double n = c[0] + c[1] + c[2] + c[3];
    if (n <= 0.0) throw EstimationError("setting has no counts");
    return (c[0] - c[1] - c[2] + c[3]) / n;
}

SteeringEstimate estimate_steering(const CountTable& table, const MeasurementScheme& scheme) {
    if (table.size() != static_cast<std::size_t>(scheme.n()))
        throw DomainError("count table has " + std::to_string(table.size()) + " settings, scheme has " +
                          std::to_string(scheme.n()));
    std::vector<double> per;
    double var = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        const auto& u = scheme.axis(static_cast<int>(k));
        if (!same_axis(table.settings[k].alice, -u) || !same_axis(table.settings[k].bob, u))
            throw DomainError("count table setting " + std::to_string(k) + " is not (-u_k, u_k)");
        const double n = table.total(k);
        if (n <= 0.0) throw EstimationError("setting " + std::to_string(k) + " has no counts");
        const double e = empirical_correlation(table.counts[k]);
        per.push_back(e);
        var += (1.0 - e * e) / n;
    }
    const double nn = static_cast<double>(scheme.n());
    SteeringEstimate out;
    out.report = make_steering_report(std::move(per), steering_bound(scheme).value);
    out.estimate = {out.report.s_value, std::sqrt(var) / nn, EstimateMethod::analytic_propagation, 0};
    return out;
}

Estimate bootstrap_steering_error(const CountTable& table, const MeasurementScheme& scheme, int resamples,
                                  std::uint64_t seed) {
    if (resamples < 2) throw DomainError("bootstrap needs at least 2 resamples");
    const auto base = estimate_steering(table, scheme);
    Rng rng(seed);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        const auto t = resample(table, rng);
        double s = 0.0;
        for (const auto& c : t.counts) {
            const double n = c[0] + c[1] + c[2] + c[3];
            s += n > 0.0 ? (c[0] - c[1] - c[2] + c[3]) / n : 0.0;
        }
        values.push_back(s / static_cast<double>(t.size()));
    }
    return {base.estimate.value, standard_deviation(values), EstimateMethod::monte_carlo, resamples};
}

Estimate estimate_chsh(const CountTable& table) {
    if (table.size() != 4) throw DomainError("a CHSH table needs exactly 4 settings");
    constexpr std::array<double, 4> sign{1, 1, 1, -1};
    double b = 0.0, var = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double e = empirical_correlation(table.counts[k]);
        b += sign[k] * e;
        var += (1.0 - e * e) / table.total(k);
    }
    return {std::abs(b), std::sqrt(var), EstimateMethod::analytic_propagation, 0};
}

ComplexMatrix linear_inversion(const CountTable& table) {
    // ρ = (1/4) Σ r_ij σ_i ⊗ σ_j with r_00 = 1. For outcome (A, B) of axes
    // (a, b): p = (1/4) Σ r_ij α_i β_j, α = (1, A a), β = (1, B b).
    constexpr std::size_t kUnknowns = 15;
    std::vector<double> gram(kUnknowns * kUnknowns, 0.0), rhs(kUnknowns, 0.0);
    for (std::size_t k = 0; k < table.size(); ++k) {
        const double n = table.total(k);
        if (n <= 0.0) continue;
        const auto& s = table.settings[k];
        for (std::size_t o = 0; o < 4; ++o) {
            const double A = kAliceSign[o], B = kBobSign[o];
            const std::array<double, 4> alpha{1, A * s.alice.x, A * s.alice.y, A * s.alice.z};
            const std::array<double, 4> beta{1, B * s.bob.x, B * s.bob.y, B * s.bob.z};
            std::array<double, kUnknowns> row{};
            for (std::size_t idx = 1; idx < 16; ++idx) row[idx - 1] = 0.25 * alpha[idx / 4] * beta[idx % 4];
            const double target = table.counts[k][o] / n - 0.25;
            for (std::size_t i = 0; i < kUnknowns; ++i) {
                rhs[i] += row[i] * target;
                for (std::size_t j = 0; j < kUnknowns; ++j) gram[i * kUnknowns + j] += row[i] * row[j];
            }
        }
    }
    if (!cholesky_solve(gram, rhs, kUnknowns))
        throw DomainError("count table is not informationally complete for two-qubit tomography");

    ComplexMatrix rho = 0.25 * ComplexMatrix::identity(4);
    const auto& sigma = pauli_basis();
    for (std::size_t idx = 1; idx < 16; ++idx)
        rho += (0.25 * rhs[idx - 1]) * kron(sigma[idx / 4], sigma[idx % 4]);
    return rho;
}

DensityMatrix tomography(const CountTable& table, const TomographyOptions& options) {
    const ComplexMatrix linear = linear_inversion(table);
    if (!options.maximum_likelihood) return project_to_state(linear);

    struct Term {
        ComplexMatrix projector;
        double count;
    };
    std::vector<Term> terms;
    double total = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (table.total(k) <= 0.0) continue;
        const auto proj = outcome_projectors(table.settings[k]);
        for (std::size_t o = 0; o < 4; ++o) {
            terms.push_back({proj[o], table.counts[k][o]});
            total += table.counts[k][o];
        }
    }

    // Start inside the positive cone so the fixed-point map can reach every
    // direction; a full-rank linear estimate is used as is.
    const auto linear_spectrum = eig_hermitian(0.5 * (linear + linear.adjoint()));
    ComplexMatrix rho = project_to_state(linear).matrix();
    if (linear_spectrum.front() <= 1e-9) rho = 0.99 * rho + 0.0025 * ComplexMatrix::identity(4);

    const auto mean_log_likelihood = [&](const ComplexMatrix& r) {
        double ll = 0.0;
        for (const auto& t : terms)
            if (t.count > 0.0) ll += t.count * std::log(std::max((t.projector * r).trace().real(), 1e-300));
        return ll / total;
    };

    double ll = mean_log_likelihood(rho);
    for (int it = 0; it < options.max_iterations; ++it) {
        ComplexMatrix r(4);
        for (const auto& t : terms) {
            if (t.count <= 0.0) continue;
            const double p = (t.projector * rho).trace().real();
            if (p > 0.0) r += (t.count / (total * p)) * t.projector;
        }
        ComplexMatrix next = r * rho * r;
        next = (1.0 / next.trace().real()) * next;
        next = 0.5 * (next + next.adjoint());
        const double next_ll = mean_log_likelihood(next);
        rho = next;
        const bool converged = std::abs(next_ll - ll) < options.tolerance;
        ll = next_ll;
        if (converged) break;
    }
    return project_to_state(rho);
}

MeasureErrors tomography_error_bars(const CountTable& table, int resamples, std::uint64_t seed,
                                    const TomographyOptions& options) {
    if (resamples < 2) throw DomainError("error bars need at least 2 resamples");
    const auto rho_hat = tomography(table, options);
    Rng rng(seed);
    std::vector<double> tangles, entropies;
    for (int r = 0; r < resamples; ++r) {
        const auto rho = tomography(resample(table, rng), options);
        tangles.push_back(tangle(rho));
        entropies.push_back(linear_entropy(rho));
    }
    MeasureErrors out;
    out.tangle = {tangle(rho_hat), standard_deviation(tangles), EstimateMethod::monte_carlo, resamples};
    out.linear_entropy = {linear_entropy(rho_hat), standard_deviation(entropies), EstimateMethod::monte_carlo,
                          resamples};
    return out;
}

PipelineReport full_pipeline(const PipelineConfig& config) {
    const WernerParameter mu(config.mu);
    const auto scheme = scheme_axes(config.n);
    const auto target = werner(mu);

    PipelineReport out;
    out.config = config;
    out.exact_s = honest_steering(target, scheme).s_value;
    out.bound = steering_bound(scheme).value;
    const auto chsh_exact = chsh_max(target);
    out.exact_b_max = chsh_exact.b_value;
    out.exact_chsh_violated = chsh_exact.violated;
    out.regime_exact = classify(mu);
    out.bell_local = unequivocally_bell_local(mu);
    for (int n : supported_setting_counts()) out.exact_steering_violations[n] = honest_steering(target, scheme_axes(n)).violated;

    // Werner-like lab state: gate output with qubit 1 depolarized.
    const auto lab = depolarize_one_sided(prepare_via_gate(), 1.0 - config.mu);

    const auto tomo_table = sample_counts(lab, tomography_settings(), config.shots, stream_seed(config.seed, 0));
    const auto rho_hat = tomography(tomo_table);
    out.tangle_hat = tangle(rho_hat);
    out.linear_entropy_hat = linear_entropy(rho_hat);
    out.fidelity_to_target = fidelity(rho_hat, lab);
    const auto correction = find_local_correction(rho_hat, stream_seed(config.seed, 1));
    out.mu_hat = correction.mu_hat;
    out.correction_residual = correction.residual_cost;
    out.regime_estimated = classify(WernerParameter(std::clamp(correction.mu_hat, 0.0, 1.0)));

    // Rotating Alice's settings by Û is equivalent to measuring the corrected state.
    const auto corrected = apply_local_correction(lab, correction.unitary);
    const auto steer_table =
        sample_counts(corrected, steering_settings(scheme), config.shots, stream_seed(config.seed, 2));
    out.steering = estimate_steering(steer_table, scheme);

    const auto chsh_table = sample_counts(corrected, chsh_measurement_settings(chsh_exact.settings), config.shots,
                                          stream_seed(config.seed, 3));
    out.chsh = estimate_chsh(chsh_table);
    out.chsh_violated = out.chsh.value > 2.0 + kViolationMargin;
    return out;
}

}  // namespace eprsteer
