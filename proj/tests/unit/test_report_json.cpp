#include <doctest.h>

#include <clocale>
#include <cmath>

#include "eprsteer/errors.hpp"
#include "eprsteer/report_json.hpp"
#include "test_support.hpp"

using namespace eprsteer;

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_number(analytic_bound(6), 15) == "0.539344662916632");
    CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
    CHECK(dump_json(Json{{"x", 0.1}}) == "{\"x\":0.10000000000000001}");
}

TEST_CASE("bound JSON") {
    const auto j = to_json(steering_bound(scheme_axes(3)));
    CHECK(j.at("n") == 3);
    CHECK(j.at("maximizer_count") == 8);
    CHECK(j.at("method") == "brute_force");
    CHECK(j.at("value").get<double>() == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("round trips") {
    const BlochVector v{0.6, 0.0, -0.8};
    CHECK(bloch_vector_from_json(Json::parse(dump_json(to_json(v)))) == v);

    const auto rep = honest_steering(werner(0.6), scheme_axes(6));
    const auto back = steering_report_from_json(Json::parse(dump_json(to_json(rep))));
    CHECK(back.s_value == rep.s_value);
    CHECK(back.per_setting == rep.per_setting);
    CHECK(back.violated == rep.violated);

    const auto c = chsh_max(werner(0.8));
    const auto cb = chsh_report_from_json(Json::parse(dump_json(to_json(c))));
    CHECK(cb.b_value == c.b_value);
    CHECK(cb.settings.a1 == c.settings.a1);

    Rng rng(1);
    const auto rho = eprsteer::testing::random_state(4, rng);
    CHECK(density_matrix_from_json(Json::parse(dump_json(to_json(rho)))).matrix().max_abs_diff(rho.matrix()) == 0.0);
}

TEST_CASE("parsers re-check invariants") {
    auto j = to_json(honest_steering(werner(0.6), scheme_axes(3)));
    j["violated"] = false;
    CHECK_THROWS_AS(steering_report_from_json(j), DomainError);
    auto k = to_json(honest_steering(werner(0.6), scheme_axes(3)));
    k["s_value"] = 0.9;
    CHECK_THROWS_AS(steering_report_from_json(k), DomainError);
    CHECK_THROWS_AS(bloch_vector_from_json(Json::array({1, 2})), DomainError);
    auto c = to_json(chsh_max(werner(0.5)));
    c["violated"] = true;
    CHECK_THROWS_AS(chsh_report_from_json(c), DomainError);
}

TEST_CASE("pipeline JSON sections") {
    const auto j = to_json(full_pipeline({.mu = 0.67, .n = 3, .shots = 1e3, .seed = 4}));
    for (const char* key : {"config", "exact", "tomography", "steering", "chsh"}) CHECK(j.contains(key));
    CHECK(j.at("exact").at("regime") == "steerable_n3");
}

TEST_CASE("output does not depend on the C locale") {
    const char* old = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = old ? old : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        CHECK(format_number(0.5) == "0.5");
        std::setlocale(LC_NUMERIC, saved.c_str());
    }
}
