#include <doctest.h>

#include <string>

#include "friendnet/casestudies.hpp"
#include "friendnet/config.hpp"
#include "friendnet/errors.hpp"

using namespace friendnet;
using namespace friendnet::cases;

namespace {

std::string violation_message(const ExtraversionCoeffs& c) {
    try {
        validate(c);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

std::string violation_message(const AgreeablenessCoeffs& c) {
    try {
        validate(c);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("extraversion coefficient constraints name the violated inequality") {
    CHECK_NOTHROW(validate(ExtraversionCoeffs{}));

    ExtraversionCoeffs c;
    c.c0 = 2.0;
    c.c1 = 1.0;
    CHECK(violation_message(c).find("c1 >= c0") != std::string::npos);

    c = ExtraversionCoeffs{};
    c.c0 = 0.0;
    CHECK(violation_message(c).find("c0 > 0") != std::string::npos);

    c = ExtraversionCoeffs{};
    c.c2 = -0.1;
    CHECK(violation_message(c).find("c2 >= 0") != std::string::npos);

    c = ExtraversionCoeffs{};
    c.c4 = 0.0;
    CHECK(violation_message(c).find("c4 > 0") != std::string::npos);

    c = ExtraversionCoeffs{};
    c.c6 = 1.0;  // below c5 = 3
    CHECK(violation_message(c).find("c6 >= c5") != std::string::npos);

    c = ExtraversionCoeffs{};
    c.c7 = -1.0;
    CHECK(violation_message(c).find("c7 >= 0") != std::string::npos);
}

TEST_CASE("agreeableness coefficient constraints name the violated inequality") {
    CHECK_NOTHROW(validate(AgreeablenessCoeffs{}));

    AgreeablenessCoeffs c;
    c.c0 = -0.5;
    CHECK(violation_message(c).find("c0 >= 0") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c1 = 0.0;
    CHECK(violation_message(c).find("c1 > 0") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c2 = 0.5;  // below c1 = 1
    CHECK(violation_message(c).find("c2 >= c1") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c3 = 0.0;  // must be strictly negative
    CHECK(violation_message(c).find("c3 < 0") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c4 = 0.5;  // below -c3 = 1
    CHECK(violation_message(c).find("c4 >= -c3") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c5 = 0.0;
    CHECK(violation_message(c).find("c5 > 0") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c6 = 0.0;
    CHECK(violation_message(c).find("c6 > 0") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c7 = 0.5;
    CHECK(violation_message(c).find("c7 < 0") != std::string::npos);

    c = AgreeablenessCoeffs{};
    c.c8 = 1.0;  // below -c7 = 2
    CHECK(violation_message(c).find("c8 >= -c7") != std::string::npos);
}

TEST_CASE("the extraversion family maps onto kernels and budgets") {
    const ModelSpec spec = extraversion_spec(ExtraversionCoeffs{});
    CHECK(spec.kernel_alpha.form() == KernelSpec::Form::affine_p);
    CHECK(spec.kernel_alpha.slope() == 1.0);
    CHECK(spec.kernel_alpha.intercept() == 1.0);
    CHECK(spec.kernel_beta.form() == KernelSpec::Form::constant);
    CHECK(spec.kernel_beta.intercept() == 2.0);
    CHECK(spec.kernel_gamma.form() == KernelSpec::Form::constant);
    CHECK(spec.kernel_gamma.intercept() == 2.0);
    CHECK(spec.count_alpha.is_constant());
    CHECK(spec.count_alpha.eval(0.7) == 10.0);
    CHECK(spec.count_beta.slope() == 3.0);
    CHECK(spec.count_beta.intercept() == 3.0);
    CHECK(spec.count_gamma.eval(0.0) == 3.0);
    CHECK(spec.variant == GraphVariant::simple);
    CHECK(spec.personality.kind() == PersonalitySpec::Kind::uniform);
    CHECK(spec.personality.low() == -1.0);
    CHECK(spec.personality.high() == 1.0);
    CHECK(spec.rate_alpha == 1.0);
    CHECK(spec.rate_beta == 0.0);
    CHECK(spec.initial_nodes == 15);
    CHECK(spec.initial_edges == 30);
    CHECK(spec.rounds == 10000);
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("the agreeableness family maps onto kernels and budgets") {
    const ModelSpec spec = agreeableness_spec(AgreeablenessCoeffs{});
    CHECK(spec.kernel_alpha.form() == KernelSpec::Form::constant);
    CHECK(spec.kernel_alpha.intercept() == 1.0);
    CHECK(spec.kernel_beta.slope() == 1.0);
    CHECK(spec.kernel_beta.intercept() == 1.0);
    CHECK(spec.kernel_gamma.slope() == -1.0);
    CHECK(spec.kernel_gamma.intercept() == 1.0);
    CHECK(spec.count_alpha.eval(0.0) == 10.0);
    CHECK(spec.count_beta.eval(-0.4) == 3.0);
    CHECK(spec.count_gamma.slope() == -2.0);
    CHECK(spec.count_gamma.intercept() == 2.0);
    CHECK(spec.rate_alpha == 0.4);
    CHECK(spec.rate_beta == 0.6);
    CHECK(spec.rate_gamma == 0.0);
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("invalid coefficients never reach the model") {
    ExtraversionCoeffs bad;
    bad.c4 = -1.0;
    CHECK_THROWS_AS(extraversion_spec(bad), ValidationError);
}

TEST_CASE("bundled study plans carry their estimation settings") {
    const SimulationPlan ext = preset("extraversion");
    CHECK(ext.preset_name == "extraversion");
    CHECK(ext.runs == 10);
    CHECK(ext.base_seed == 1);
    CHECK(ext.estimation.window == 3000);
    CHECK(ext.thresholds.margin == 0.8);
    CHECK(ext.model.rate_alpha == 1.0);
    CHECK(ext.model.rounds == 10000);

    const SimulationPlan agr = preset("agreeableness");
    CHECK(agr.estimation.window == 6000);
    CHECK(agr.thresholds.margin == doctest::Approx(0.7));
    CHECK(agr.model.rate_alpha == 0.4);
    CHECK(agr.model.rate_beta == 0.6);

    try {
        preset("openness");
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("unknown preset") != std::string::npos);
    }
}

TEST_CASE("plans round-trip through the config format bit-exactly") {
    for (const char* name : {"extraversion", "agreeableness"}) {
        const SimulationPlan plan = preset(name);
        const std::string first = io::canonical_config_string(plan);
        const SimulationPlan reparsed = io::plan_from_json(io::plan_to_json(plan));
        const std::string second = io::canonical_config_string(reparsed);
        CHECK(first == second);
        CHECK(io::config_digest(plan) == io::config_digest(reparsed));
    }
    CHECK(io::config_digest(preset("extraversion")) !=
          io::config_digest(preset("agreeableness")));
}
