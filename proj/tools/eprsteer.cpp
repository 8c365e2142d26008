// eprsteer: command-line front end.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eprsteer/bounds.hpp"
#include "eprsteer/errors.hpp"
#include "eprsteer/experiment.hpp"
#include "eprsteer/protocol.hpp"
#include "eprsteer/random.hpp"
#include "eprsteer/report_json.hpp"
#include "eprsteer/states.hpp"

using namespace eprsteer;

namespace {

constexpr int kCsvDigits = 15;

struct Common {
    std::string format = "json";
    std::string output;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void emit(const Common& common, const std::string& text) {
    if (common.output.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(common.output, std::ios::binary);
    if (!out) throw DomainError("cannot open output file " + common.output);
    out << text;
}

std::string csv_number(double v) { return format_number(v, kCsvDigits); }

std::string csv_scalar(const Json& v) {
    if (v.is_number_float()) return csv_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
    } else {
        rows.emplace_back(prefix, csv_scalar(j));
    }
}

// key,value rows for reports that have no natural table form.
std::string json_as_csv(const Json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows) out += k + "," + v + "\n";
    return out;
}

void emit_report(const Common& common, const Json& j) {
    emit(common, common.format == "csv" ? json_as_csv(j) : dump_json(j, 2) + "\n");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "eprsteer: no --seed given, using --seed " << s << "\n";
    return s;
}

// Runs job(i) for i in [0, count) on `threads` workers; results keep index order.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, unsigned threads, F job) {
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<BlochVector> read_axes_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read axes file " + path);
    std::vector<BlochVector> axes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        row.imbue(std::locale::classic());
        BlochVector v;
        std::string rest;
        if (!(row >> v.x >> v.y >> v.z) || (row >> rest))
            throw DomainError(path + ":" + std::to_string(line_no) + ": expected three numbers x,y,z");
        if (!(v.norm() > 0.0)) throw DomainError(path + ":" + std::to_string(line_no) + ": zero axis");
        axes.push_back(v.normalized());
    }
    return axes;
}

void run_scheme(const Common& common, int n) {
    const auto scheme = scheme_axes(n);
    if (common.format == "json") {
        Json axes = Json::array();
        for (const auto& u : scheme.axes()) axes.push_back(to_json(u));
        emit(common, dump_json({{"n", n}, {"figure", std::string(figure_name(scheme.figure()))}, {"axes", axes}}, 2) + "\n");
        return;
    }
    std::string out;
    for (const auto& u : scheme.axes()) out += csv_number(u.x) + "," + csv_number(u.y) + "," + csv_number(u.z) + "\n";
    emit(common, out);
}

void run_bounds(const Common& common, std::optional<int> n, const std::string& axes_file, const std::string& method) {
    if (n.has_value() == !axes_file.empty()) throw DomainError("give exactly one of --n or --axes");
    if (method == "analytic") {
        if (!n) throw DomainError("the analytic method needs --n");
        SteeringBound b;
        b.n = *n;
        b.value = analytic_bound(*n);
        b.method = BoundMethod::analytic;
        emit_report(common, to_json(b));
        return;
    }
    const auto scheme = n ? scheme_axes(*n) : MeasurementScheme::from_axes(read_axes_csv(axes_file));
    emit_report(common, to_json(steering_bound(scheme)));
}

void run_state(const Common& common, double mu, double q) {
    const WernerParameter p(mu);
    const auto rho = depolarize_one_sided(werner(p), q);
    // One-sided depolarizing keeps a Werner state Werner: W_μ → W_{μ(1−q)}.
    const WernerParameter effective(std::clamp(mu * (1.0 - q), 0.0, 1.0));
    Json j{{"mu", mu},
           {"depolarize", q},
           {"effective_mu", effective.value()},
           {"eigenvalues", eig_hermitian(rho.matrix())},
           {"tangle", tangle(rho)},
           {"concurrence", concurrence(rho)},
           {"linear_entropy", linear_entropy(rho)},
           {"regime", std::string(regime_name(classify(effective)))},
           {"bell_local", unequivocally_bell_local(effective)}};
    emit_report(common, j);
}

void run_steer(const Common& common, double mu, int n) {
    emit_report(common, to_json(honest_steering(werner(WernerParameter(mu)), scheme_axes(n))));
}

void run_cheat(const Common& common, int n, const std::string& kind) {
    const DirectionKind k = parse_kind(kind);
    const auto ensemble = make_ensemble(n, k);
    Json j = to_json(cheat_steering(ensemble, scheme_axes(n)));
    j["kind"] = std::string(kind_name(k));
    j["ensemble_size"] = ensemble.size();
    emit_report(common, j);
}

void run_bell(const Common& common, double mu) {
    const WernerParameter p(mu);
    Json j = to_json(chsh_max(werner(p)));
    j["bell_local"] = unequivocally_bell_local(p);
    emit_report(common, j);
}

struct ScanRow {
    double mu = 0.0;
    SteeringReport steering;
    ChshReport chsh;
    Regime regime = Regime::separable;
};

void run_scan(const Common& common, double from, double to, double step, int n) {
    if (!(step > 0.0)) throw DomainError("--step must be positive");
    if (!(from >= 0.0 && to <= 1.0 && from <= to)) throw DomainError("scan range must satisfy 0 <= from <= to <= 1");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    const auto scheme = scheme_axes(n);
    const auto rows = parallel_map<ScanRow>(count, common.threads, [&](std::size_t i) {
        ScanRow r;
        r.mu = std::min(to, from + static_cast<double>(i) * step);
        const auto w = werner(r.mu);
        r.steering = honest_steering(w, scheme);
        r.chsh = chsh_max(w);
        r.regime = classify(WernerParameter(r.mu));
        return r;
    });
    if (common.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back({{"mu", r.mu},
                           {"s_n", r.steering.s_value},
                           {"c_n", r.steering.bound},
                           {"b_max", r.chsh.b_value},
                           {"steering_violated", r.steering.violated},
                           {"chsh_violated", r.chsh.violated},
                           {"regime", std::string(regime_name(r.regime))}});
        emit(common, dump_json({{"n", n}, {"rows", arr}}, 2) + "\n");
        return;
    }
    std::string out = "mu,s_n,c_n,b_max,steering_violated,chsh_violated,regime\n";
    for (const auto& r : rows)
        out += csv_number(r.mu) + "," + csv_number(r.steering.s_value) + "," + csv_number(r.steering.bound) + "," +
               csv_number(r.chsh.b_value) + "," + (r.steering.violated ? "true" : "false") + "," +
               (r.chsh.violated ? "true" : "false") + "," + std::string(regime_name(r.regime)) + "\n";
    emit(common, out);
}

void run_mc(const Common& common, double mu, int n, double shots, std::uint64_t seed, int repeats) {
    if (repeats < 1) throw DomainError("--repeats must be at least 1");
    WernerParameter{mu};
    scheme_axes(n);
    const auto runs = parallel_map<PipelineReport>(static_cast<std::size_t>(repeats), common.threads, [&](std::size_t r) {
        return full_pipeline({.mu = mu, .n = n, .shots = shots, .seed = stream_seed(seed, r)});
    });

    std::vector<double> s;
    int violations = 0, chsh_violations = 0;
    for (const auto& r : runs) {
        s.push_back(r.steering.report.s_value);
        violations += r.steering.report.violated;
        chsh_violations += r.chsh_violated;
    }
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    double ss = 0.0;
    for (double x : s) ss += (x - mean) * (x - mean);
    const double sd = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) : 0.0;

    if (common.format == "csv") {
        std::string out = "run,seed,s_hat,s_std_error,steering_violated,b_hat,b_std_error,chsh_violated,mu_hat,fidelity\n";
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& r = runs[i];
            out += std::to_string(i) + "," + std::to_string(r.config.seed) + "," + csv_number(r.steering.report.s_value) +
                   "," + csv_number(r.steering.estimate.std_error) + "," + (r.steering.report.violated ? "true" : "false") +
                   "," + csv_number(r.chsh.value) + "," + csv_number(r.chsh.std_error) + "," +
                   (r.chsh_violated ? "true" : "false") + "," + csv_number(r.mu_hat) + "," +
                   csv_number(r.fidelity_to_target) + "\n";
        }
        emit(common, out);
        return;
    }
    Json arr = Json::array();
    for (const auto& r : runs) arr.push_back(to_json(r));
    Json bundle{{"config", {{"mu", mu}, {"n", n}, {"shots", shots}, {"seed", seed}, {"repeats", repeats}}},
                {"runs", arr},
                {"summary",
                 {{"s_mean", mean},
                  {"s_sd", sd},
                  {"steering_violations", violations},
                  {"chsh_violations", chsh_violations},
                  {"bound", runs.front().bound}}}};
    emit(common, dump_json(bundle, 2) + "\n");
}

void run_tomo(const Common& common, double mu, double shots, std::uint64_t seed, int resamples) {
    const auto target = werner(WernerParameter(mu));
    const auto table = sample_counts(target, tomography_settings(), shots, stream_seed(seed, 0));
    const auto rho_hat = tomography(table);
    Json j{{"mu", mu},
           {"shots", shots},
           {"seed", seed},
           {"rho_hat", to_json(rho_hat)},
           {"fidelity_to_target", fidelity(rho_hat, target)},
           {"fidelity_convention", "squared_uhlmann"},
           {"tangle", tangle(rho_hat)},
           {"linear_entropy", linear_entropy(rho_hat)}};
    if (resamples > 0) {
        const auto err = tomography_error_bars(table, resamples, stream_seed(seed, 1));
        j["tangle_std_error"] = err.tangle.std_error;
        j["linear_entropy_std_error"] = err.linear_entropy.std_error;
        j["resamples"] = resamples;
    }
    emit_report(common, j);
}

void report_error(const std::string& kind, const std::string& detail) {
    std::cerr << Json{{"error", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EPR-steering bounds, Werner-state protocol simulation and counting statistics"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", common.output, "Write to this file instead of standard output");
    app.add_option("--threads", common.threads, "Worker threads for scan and mc --repeats")->check(CLI::PositiveNumber);

    int n = 3;
    double mu = 0.0, q = 0.0, shots = 1e4, from = 0.0, to = 1.0, step = 0.01;
    std::optional<std::uint64_t> seed;
    std::optional<int> bound_n;
    std::string axes_file, method = "brute_force", kind = "vertex";
    int repeats = 1, resamples = 200;

    auto* scheme = app.add_subcommand("scheme", "Measurement axes of the canonical figure (CSV x,y,z by default)");
    scheme->add_option("--n", n, "Number of settings: 2, 3, 4, 6 or 10")->required();

    auto* bounds = app.add_subcommand("bounds", "Steering bound C_n");
    bounds->add_option("--n", bound_n, "Canonical scheme with n settings");
    bounds->add_option("--axes", axes_file, "CSV file with one axis x,y,z per line");
    bounds->add_option("--method", method, "Exhaustive search or closed form")
        ->check(CLI::IsMember({"brute_force", "analytic"}));

    auto* state = app.add_subcommand("state", "Spectrum, tangle, linear entropy and regime of a Werner state");
    state->add_option("--mu", mu, "Singlet weight")->required();
    state->add_option("--depolarize", q, "One-sided depolarizing strength q");

    auto* steer = app.add_subcommand("steer", "Exact steering parameter of an honest Alice sharing W_mu");
    steer->add_option("--mu", mu, "Singlet weight")->required();
    steer->add_option("--n", n, "Number of settings")->required();

    auto* cheat = app.add_subcommand("cheat", "Steering parameter of the vertex or dual LHS ensemble");
    cheat->add_option("--n", n, "Number of settings")->required();
    cheat->add_option("--kind", kind, "Ensemble directions")->check(CLI::IsMember({"vertex", "dual"}));

    auto* bell = app.add_subcommand("bell", "Maximal CHSH value of W_mu with optimal settings");
    bell->add_option("--mu", mu, "Singlet weight")->required();

    auto* scan = app.add_subcommand("scan", "S_n, C_n, B_max and regime over a grid of mu (CSV by default)");
    scan->add_option("--from", from, "First mu");
    scan->add_option("--to", to, "Last mu");
    scan->add_option("--step", step, "Grid step");
    scan->add_option("--n", n, "Number of settings")->required();

    auto* mc = app.add_subcommand("mc", "Simulated experiment: tomography, correction, sampled S_n and B");
    mc->add_option("--mu", mu, "Singlet weight")->required();
    mc->add_option("--n", n, "Number of settings")->required();
    mc->add_option("--shots", shots, "Expected counts per setting");
    mc->add_option("--seed", seed, "Master seed");
    mc->add_option("--repeats", repeats, "Independent runs");

    auto* tomo = app.add_subcommand("tomo", "Tomographic reconstruction of W_mu from sampled counts");
    tomo->add_option("--mu", mu, "Singlet weight")->required();
    tomo->add_option("--shots", shots, "Expected counts per setting");
    tomo->add_option("--seed", seed, "Master seed");
    tomo->add_option("--resamples", resamples, "Resamples for error bars (0 disables)");

    for (auto* sub : {scheme, bounds, state, steer, cheat, bell, scan, mc, tomo}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return 1;
    }

    try {
        if (*scheme) {
            if (!app.get_option("--format")->count()) common.format = "csv";
            run_scheme(common, n);
        } else if (*bounds) {
            run_bounds(common, bound_n, axes_file, method);
        } else if (*state) {
            run_state(common, mu, q);
        } else if (*steer) {
            run_steer(common, mu, n);
        } else if (*cheat) {
            run_cheat(common, n, kind);
        } else if (*bell) {
            run_bell(common, mu);
        } else if (*scan) {
            if (!app.get_option("--format")->count()) common.format = "csv";
            run_scan(common, from, to, step, n);
        } else if (*mc) {
            run_mc(common, mu, n, shots, resolve_seed(seed), repeats);
        } else if (*tomo) {
            run_tomo(common, mu, shots, resolve_seed(seed), resamples);
        }
    } catch (const DomainError& e) {
        report_error("domain_error", e.what());
        return 1;
    } catch (const EstimationError& e) {
        report_error("estimation_error", e.what());
        return 1;
    } catch (const std::exception& e) {
        report_error("internal_error", e.what());
        return 2;
    }
    return 0;
}
