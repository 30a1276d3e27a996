#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "stefan/velocity.hpp"

using namespace stefan;

TEST_CASE("linear law") {
    const auto law = VelocityLaw::linear(2.0, 1.0);
    CHECK(law.eval(1.0) == 0.0);
    CHECK(law.eval(0.75) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(law.lipschitz_constant() == 2.0);
    CHECK_FALSE(law.v_max().has_value());
    CHECK(law.max_speed_over(0.0, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(VelocityLaw::linear(0.0, 1.0), NonPositiveParameter);
}

TEST_CASE("saturated law") {
    const auto law = VelocityLaw::saturated(1.0, 0.1, 5.0);
    const double far_below = law.eval(5.0 - 10.0);
    CHECK(far_below > 0.999);
    CHECK(far_below <= 1.0);
    CHECK(law.eval(5.0) == 0.0);
    CHECK(law.lipschitz_constant() == doctest::Approx(10.0));
    REQUIRE(law.v_max().has_value());
    CHECK(*law.v_max() == 1.0);
}

TEST_CASE("table law") {
    const double tT = 1.0;
    const auto law =
        VelocityLaw::table({tT - 1.0, tT, tT + 1.0}, {1.0, 0.0, -1.0}, tT);
    CHECK(law.eval(tT) == 0.0);
    CHECK(law.eval(tT - 0.5) == doctest::Approx(0.5));
    CHECK(law.lipschitz_constant() == doctest::Approx(1.0));
    CHECK(*law.v_max() == 1.0);
    // flat extension outside the sampled range
    CHECK(law.eval(tT - 5.0) == 1.0);
    CHECK(law.eval(tT + 5.0) == -1.0);

    SUBCASE("non-monotone table rejected") {
        CHECK_THROWS_AS(
            VelocityLaw::table({0.0, 0.5, 1.0}, {1.0, 1.2, 0.0}, 1.0),
            SignConditionViolated);
    }
    SUBCASE("sign-violating table rejected at load") {
        // monotone non-increasing, but negative below theta_T
        CHECK_THROWS_AS(
            VelocityLaw::table({tT - 1.0, tT - 0.5}, {-0.05, -0.1}, tT),
            SignConditionViolated);
    }
    SUBCASE("violation location reported") {
        try {
            VelocityLaw::table({tT - 1.0, tT - 0.5}, {-0.05, -0.1}, tT);
            CHECK(false);
        } catch (const SignConditionViolated& e) {
            CHECK(e.theta < tT);
        }
    }
}

TEST_CASE("table from file") {
    const char* path = "vel_table_test.txt";
    {
        std::ofstream f(path);
        f << "# theta  v\n0.0 1.0\n1.0 0.0\n2.0 -1.0\n";
    }
    const auto law = VelocityLaw::table_from_file(path, 1.0);
    CHECK(law.eval(0.5) == doctest::Approx(0.5));
    std::remove(path);
    CHECK_THROWS_AS(VelocityLaw::table_from_file("no_such_file.txt", 1.0),
                    ConfigError);
}

TEST_CASE("sign condition across shipped laws at 1001 samples") {
    const double tT = 1.5;
    const VelocityLaw laws[] = {
        VelocityLaw::linear(3.0, tT),
        VelocityLaw::saturated(2.0, 0.25, tT),
        VelocityLaw::table({tT - 2.0, tT, tT + 2.0}, {0.5, 0.0, -0.5}, tT),
    };
    for (const auto& law : laws) {
        const SignReport rep = law.validate_sign_condition(1001, 1.0);
        CHECK(rep.pass);
        CHECK_NOTHROW(law.require_sign_condition(1001, 1.0));
        // (theta_T - theta) * v >= 0, equality only at theta_T
        for (int i = 0; i <= 100; ++i) {
            const double theta = tT - 1.0 + 0.02 * i;
            const double prod = (tT - theta) * law.eval(theta);
            if (theta == tT)
                CHECK(law.eval(theta) == 0.0);
            else
                CHECK(prod > 0.0);
        }
    }
    CHECK_THROWS_AS(laws[0].validate_sign_condition(2, 1.0), ConfigError);
}
