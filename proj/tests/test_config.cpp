#include <doctest.h>

#include "migragent/config.hpp"
#include "migragent/error.hpp"

using namespace migragent;

TEST_CASE("config text sets fields and ignores comments") {
    SweepSpec s;
    apply_config_text(s, R"(# experiment
number_local = 200   # trailing comment
number_migrant=150
speed_levels = 1, 100
conservatism_local_levels = -0.5, 0.5
intake_policy = literal
conservatism_bounds = -2, 2

auto_scale_grid = false
)");
    CHECK(s.base.number_local == 200);
    CHECK(s.base.number_migrant == 150);
    CHECK(s.speed_levels == std::vector<int>{1, 100});
    CHECK(s.conservatism_local_levels == std::vector<double>{-0.5, 0.5});
    CHECK(s.base.intake_policy == IntakePolicy::Literal);
    CHECK(s.base.conservatism_lower == -2.0);
    CHECK(s.base.conservatism_upper == 2.0);
    CHECK_FALSE(s.base.auto_scale_grid);
    CHECK(s.condition_count() == 2 * 5 * 2);
}

TEST_CASE("unknown keys and bad values are reported with their line") {
    SweepSpec s;
    try {
        apply_config_text(s, "ticks = 10\nbogus = 3\n", "exp.cfg");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        const std::string msg = e.what();
        CHECK(msg.find("exp.cfg:2") != std::string::npos);
        CHECK(msg.find("bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(apply_setting(s, "ticks", "ten"), Error);
    CHECK_THROWS_AS(apply_setting(s, "speed_levels", ""), Error);
    CHECK_THROWS_AS(apply_setting(s, "intake_policy", "fast"), Error);
    CHECK_THROWS_AS(apply_config_text(s, "no equals sign\n"), Error);
}

TEST_CASE("dump and reload round-trips every key") {
    SweepSpec a;
    apply_setting(a, "seed", "987654321");
    apply_setting(a, "init_sd", "0.3");
    apply_setting(a, "replications", "7");
    SweepSpec b;
    apply_config_text(b, dump_config(a));
    for (const auto& key : setting_keys()) CHECK(get_setting(a, key) == get_setting(b, key));
    CHECK(b.base.seed == 987654321u);
    CHECK(b.replications == 7);
}

TEST_CASE("validation rejects impossible parameters") {
    SimParams p;
    p.number_local = -1;
    CHECK_THROWS_AS(validate(p), Error);
    p = SimParams{};
    p.speed_intake = 0;
    CHECK_THROWS_AS(validate(p), Error);
    p = SimParams{};
    p.init_sd = -0.1;
    CHECK_THROWS_AS(validate(p), Error);
    p = SimParams{};
    p.conservatism_lower = 1;
    p.conservatism_upper = -1;
    CHECK_THROWS_AS(validate(p), Error);
    SweepSpec s;
    s.replications = 0;
    CHECK_THROWS_AS(validate(s), Error);
    CHECK_NOTHROW(validate(SweepSpec{}));
}
