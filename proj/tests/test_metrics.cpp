#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "migragent/simulation.hpp"

using namespace migragent;
using namespace migragent::testing;

TEST_CASE("observables of a hand-built world") {
    const World w = make_world(10, 5,
                               {{Ethnicity::Local, 0.5, {6, 2}},
                                {Ethnicity::Migrant, -0.3, {7, 2}},
                                {Ethnicity::Local, -0.2, {5, 2}},
                                {Ethnicity::Migrant, 0.4, {0, 0}}});  // still at home
    const auto obs = baseline(w);
    const auto& loc = obs.of(Ethnicity::Local);
    const auto& mig = obs.of(Ethnicity::Migrant);
    CHECK(loc.host_count == 2);
    CHECK(mig.host_count == 1);
    CHECK(loc.mean_conservatism == doctest::Approx(0.15));
    CHECK(mig.mean_conservatism == doctest::Approx(-0.3));
    CHECK(loc.fraction_liberal == doctest::Approx(0.5));
    CHECK(mig.fraction_liberal == 1.0);
    // Agent 0 (conservative local): ingroup link from 2 only -> separation.
    // Agent 2 (liberal local): ingroup link from 0 -> separation.
    // Agent 1 (liberal migrant): outgroup link from 0 -> assimilation.
    CHECK(loc.outcome[static_cast<int>(Outcome::Separation)] == 1.0);
    CHECK(mig.outcome[static_cast<int>(Outcome::Assimilation)] == 1.0);
    CHECK(obs.of(Substratum::ConservativeLocals).count == 1);
    CHECK(obs.of(Substratum::LiberalLocals).count == 1);
    CHECK(obs.of(Substratum::LiberalMigrants).count == 1);
    CHECK(obs.of(Substratum::ConservativeMigrants).empty);
    CHECK(obs.of(Substratum::ConservativeMigrants).outcome == std::array<double, 4>{});
}

TEST_CASE("observables agree with a naive recount during a run") {
    SimParams p = small_params(60, 60, 40);
    p.speed_intake = 100;
    p.conservatism_local = 0.25;
    p.conservatism_migrant = -0.25;
    Rng rng(8);
    World w = init_world(p, rng);
    for (int t = 0; t < 40; ++t) {
        intake_step(w, rng);
        movement_step(w, rng);
        const auto ev = propose_and_resolve(w);
        record_experiences(w.agents, ev);
        for (auto& a : w.agents)
            if (a.in_host) update_conservatism(a);
        const auto obs = observe(w, t + 1, classify_all(w, ev));

        for (int e = 0; e < 2; ++e) {
            int n = 0, lib = 0;
            double sum = 0;
            std::array<int, 4> out{};
            for (const auto& a : w.agents) {
                if (!a.in_host || static_cast<int>(a.ethnicity) != e) continue;
                ++n;
                sum += a.conservatism;
                lib += a.conservatism < 0;
                ++out[static_cast<int>(classify(a.id, ev))];
            }
            const auto& ps = obs.population[e];
            CHECK(ps.host_count == n);
            CHECK(ps.mean_conservatism == doctest::Approx(sum / n));
            CHECK(ps.fraction_liberal == doctest::Approx(double(lib) / n));
            CHECK(ps.fraction_liberal + ps.fraction_conservative == doctest::Approx(1.0));
            double total = 0;
            for (int o = 0; o < 4; ++o) {
                CHECK(ps.outcome[o] == doctest::Approx(double(out[o]) / n));
                total += ps.outcome[o];
            }
            CHECK(total == doctest::Approx(1.0));
        }
        std::int64_t sub_total = 0;
        for (auto s : kSubstrata) {
            const auto& st = obs.of(s);
            sub_total += st.count;
            if (st.empty) continue;
            double total = 0;
            for (double f : st.outcome) total += f;
            CHECK(total == doctest::Approx(1.0));
        }
        CHECK(sub_total == obs.of(Ethnicity::Local).host_count + obs.of(Ethnicity::Migrant).host_count);
    }
}
