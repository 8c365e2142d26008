#pragma once

// Monte-Carlo model of the coincidence-counting experiment: Poisson counts
// per outcome, estimators with error bars, and two-qubit state tomography.

#include <array>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "eprsteer/geometry.hpp"
#include "eprsteer/linalg.hpp"
#include "eprsteer/protocol.hpp"
#include "eprsteer/states.hpp"

namespace eprsteer {

/// Joint measurement: Alice's axis and Bob's axis.
struct Setting {
    BlochVector alice;
    BlochVector bob;
};

/// Outcome order within a setting: (A, B) = (+,+), (+,−), (−,+), (−,−).
using OutcomeCounts = std::array<double, 4>;

/// Counts per setting. Sampled tables hold non-negative integers; tables
/// built by expected_counts hold the exact means shots·p(A, B).
struct CountTable {
    std::vector<Setting> settings;
    std::vector<OutcomeCounts> counts;
    double shots_target = 0.0;

    std::size_t size() const { return settings.size(); }
    double total(std::size_t k) const;
};

enum class EstimateMethod { analytic_propagation, monte_carlo };

std::string_view method_name(EstimateMethod m);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    EstimateMethod method = EstimateMethod::analytic_propagation;
    int resamples = 0;  ///< monte_carlo only
};

/// p(A, B) = Tr[(Π_A ⊗ Π_B) ρ] in outcome order.
OutcomeCounts outcome_probabilities(const DensityMatrix& rho, const Setting& setting);

/// Each count drawn independently from Poisson(efficiency · shots · p(A, B)).
/// Setting k uses the stream stream_seed(seed, k), so results do not depend
/// on evaluation order. `efficiency` scales total rates only.
CountTable sample_counts(const DensityMatrix& rho, const std::vector<Setting>& settings, double shots,
                         std::uint64_t seed, double efficiency = 1.0);

/// Noiseless table: counts are exactly shots · p(A, B).
CountTable expected_counts(const DensityMatrix& rho, const std::vector<Setting>& settings, double shots);

/// (−u_k, u_k) for every axis of the scheme.
std::vector<Setting> steering_settings(const MeasurementScheme& scheme);

/// (a1,b1), (a1,b2), (a2,b1), (a2,b2).
std::vector<Setting> chsh_measurement_settings(const ChshSettings& s);

/// The nine Pauli axis pairs; with four outcomes each these are the 36
/// eigenstate-pair projections of standard two-qubit tomography.
std::vector<Setting> tomography_settings();

/// Ê_k = (N₊₊ − N₊₋ − N₋₊ + N₋₋) / N_k.
double empirical_correlation(const OutcomeCounts& c);

struct SteeringEstimate {
    SteeringReport report;
    Estimate estimate;
};

/// Ŝ_n with the delta-method error for independent Poisson counts,
/// Var Ê_k = (1 − Ê_k²) / N_k. Requires table settings (−u_k, u_k).
SteeringEstimate estimate_steering(const CountTable& table, const MeasurementScheme& scheme);

/// Standard deviation of Ŝ_n over parametric Poisson resamples of the table.
Estimate bootstrap_steering_error(const CountTable& table, const MeasurementScheme& scheme, int resamples,
                                  std::uint64_t seed);

/// B̂ from a table laid out as chsh_measurement_settings, delta-method error.
Estimate estimate_chsh(const CountTable& table);

struct TomographyOptions {
    bool maximum_likelihood = true;
    int max_iterations = 5000;
    double tolerance = 1e-10;  ///< on the per-count mean log-likelihood
};

/// Least-squares linear inversion of the observed frequencies. May be
/// non-positive. Throws DomainError for informationally incomplete tables.
ComplexMatrix linear_inversion(const CountTable& table);

/// Linear inversion followed by RρR maximum-likelihood iteration; the result
/// is eigen-clipped and renormalized.
DensityMatrix tomography(const CountTable& table, const TomographyOptions& options = {});

struct MeasureErrors {
    Estimate tangle;
    Estimate linear_entropy;
};

/// Tangle and linear entropy of the reconstruction, with standard deviations
/// over Poisson resamples of the table.
MeasureErrors tomography_error_bars(const CountTable& table, int resamples, std::uint64_t seed,
                                    const TomographyOptions& options = {});

struct PipelineConfig {
    double mu = 0.0;
    int n = 3;
    double shots = 1e4;  ///< per setting
    std::uint64_t seed = 0;
};

struct PipelineReport {
    PipelineConfig config;
    // Exact values for W_μ.
    double exact_s = 0.0;
    double bound = 0.0;
    double exact_b_max = 0.0;
    Regime regime_exact = Regime::separable;
    bool bell_local = false;
    std::map<int, bool> exact_steering_violations;  ///< per supported n
    bool exact_chsh_violated = false;
    // Tomography of the prepared Werner-like state.
    double fidelity_to_target = 0.0;
    double tangle_hat = 0.0;
    double linear_entropy_hat = 0.0;
    double mu_hat = 0.0;
    double correction_residual = 0.0;
    Regime regime_estimated = Regime::separable;
    // Sampled estimates on the corrected state.
    SteeringEstimate steering;
    Estimate chsh;
    bool chsh_violated = false;
};

/// Prepares (H ⊗ I)|Ψ⁻⟩, depolarizes qubit 1 with q = 1 − μ, reconstructs it
/// tomographically, finds the local correction, then samples the steering
/// and CHSH measurements on the corrected state.
PipelineReport full_pipeline(const PipelineConfig& config);

}  // namespace eprsteer
