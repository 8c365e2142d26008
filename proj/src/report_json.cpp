#include "eprsteer/report_json.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "eprsteer/errors.hpp"

namespace eprsteer {

namespace {

void write(const Json& j, std::string& out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write(v, out, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_number(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError("invalid JSON report: " + what);
}

}  // namespace

std::string format_number(double v, int significant_digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant_digits);
    return std::string(buf, res.ptr);
}

std::string dump_json(const Json& j, int indent) {
    std::string out;
    write(j, out, indent, 0);
    return out;
}

Json to_json(const BlochVector& v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const SteeringBound& b) {
    return {{"n", b.n},
            {"value", b.value},
            {"method", std::string(method_name(b.method))},
            {"maximizer_count", b.maximizers.size()}};
}

Json to_json(const SteeringReport& r) {
    return {{"n", r.n}, {"s_value", r.s_value}, {"bound", r.bound}, {"violated", r.violated}, {"per_setting", r.per_setting}};
}

Json to_json(const ChshReport& r) {
    return {{"b_value", r.b_value},
            {"violated", r.violated},
            {"settings",
             {{"a1", to_json(r.settings.a1)},
              {"a2", to_json(r.settings.a2)},
              {"b1", to_json(r.settings.b1)},
              {"b2", to_json(r.settings.b2)}}}};
}

Json to_json(const Estimate& e) {
    Json j{{"value", e.value}, {"std_error", e.std_error}, {"method", std::string(method_name(e.method))}};
    if (e.method == EstimateMethod::monte_carlo) j["resamples"] = e.resamples;
    return j;
}

Json to_json(const DensityMatrix& rho) {
    Json entries = Json::array();
    for (const auto& c : rho.matrix().entries()) entries.push_back(Json::array({c.real(), c.imag()}));
    return entries;
}

Json to_json(const PipelineReport& r) {
    Json by_n = Json::object();
    for (const auto& [n, v] : r.exact_steering_violations) by_n[std::to_string(n)] = v;
    Json steering = to_json(r.steering.report);
    steering["estimate"] = to_json(r.steering.estimate);
    return {{"config",
             {{"mu", r.config.mu}, {"n", r.config.n}, {"shots", r.config.shots}, {"seed", r.config.seed}}},
            {"exact",
             {{"s_value", r.exact_s},
              {"bound", r.bound},
              {"b_max", r.exact_b_max},
              {"chsh_violated", r.exact_chsh_violated},
              {"steering_violated_by_n", by_n},
              {"regime", std::string(regime_name(r.regime_exact))},
              {"bell_local", r.bell_local}}},
            {"tomography",
             {{"fidelity_to_target", r.fidelity_to_target},
              {"tangle", r.tangle_hat},
              {"linear_entropy", r.linear_entropy_hat},
              {"mu_hat", r.mu_hat},
              {"correction_residual", r.correction_residual},
              {"regime", std::string(regime_name(r.regime_estimated))}}},
            {"steering", steering},
            {"chsh", {{"estimate", to_json(r.chsh)}, {"violated", r.chsh_violated}}}};
}

BlochVector bloch_vector_from_json(const Json& j) {
    require(j.is_array() && j.size() == 3, "Bloch vector must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

SteeringReport steering_report_from_json(const Json& j) {
    SteeringReport r;
    r.n = j.at("n").get<int>();
    r.s_value = j.at("s_value").get<double>();
    r.bound = j.at("bound").get<double>();
    r.violated = j.at("violated").get<bool>();
    r.per_setting = j.at("per_setting").get<std::vector<double>>();
    require(static_cast<int>(r.per_setting.size()) == r.n, "per_setting length differs from n");
    require(r.n > 0, "n must be positive");
    const double mean = std::accumulate(r.per_setting.begin(), r.per_setting.end(), 0.0) / r.n;
    require(std::abs(mean - r.s_value) <= 1e-12, "s_value is not the mean of per_setting");
    require(r.violated == (r.s_value > r.bound + kViolationMargin), "violated flag inconsistent with s_value and bound");
    return r;
}

ChshReport chsh_report_from_json(const Json& j) {
    ChshReport r;
    r.b_value = j.at("b_value").get<double>();
    r.violated = j.at("violated").get<bool>();
    const auto& s = j.at("settings");
    r.settings = {bloch_vector_from_json(s.at("a1")), bloch_vector_from_json(s.at("a2")),
                  bloch_vector_from_json(s.at("b1")), bloch_vector_from_json(s.at("b2"))};
    require(std::abs(r.b_value) <= 2.0 * std::sqrt(2.0) + 1e-9, "b_value exceeds the Tsirelson bound");
    require(r.violated == (r.b_value > 2.0 + kViolationMargin), "violated flag inconsistent with b_value");
    for (const auto* v : {&r.settings.a1, &r.settings.a2, &r.settings.b1, &r.settings.b2})
        require(v->is_unit(1e-9), "CHSH settings must be unit vectors");
    return r;
}

DensityMatrix density_matrix_from_json(const Json& j) {
    require(j.is_array() && (j.size() == 4 || j.size() == 16), "density matrix needs 4 or 16 complex entries");
    std::vector<Complex> entries;
    for (const auto& c : j) {
        require(c.is_array() && c.size() == 2, "complex entries are [re, im] pairs");
        entries.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return DensityMatrix(ComplexMatrix(j.size() == 4 ? 2 : 4, entries));
}

}  // namespace eprsteer
