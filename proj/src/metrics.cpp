#include "migragent/metrics.hpp"

namespace migragent {

std::string_view to_string(Substratum s) {
    switch (s) {
    case Substratum::LiberalLocals: return "liberal_locals";
    case Substratum::ConservativeLocals: return "conservative_locals";
    case Substratum::LiberalMigrants: return "liberal_migrants";
    case Substratum::ConservativeMigrants: return "conservative_migrants";
    }
    return "?";
}

std::string_view to_string(Ethnicity e) { return e == Ethnicity::Local ? "local" : "migrant"; }

TickObservables observe(const World& world, std::int64_t tick, const Classifications& classifications) {
    TickObservables obs;
    obs.tick = tick;
    std::array<double, 2> sum{};
    std::array<std::int64_t, 2> liberal{};
    std::array<std::array<std::int64_t, 4>, 2> pop_outcomes{};
    std::array<std::array<std::int64_t, 4>, 4> sub_outcomes{};

    for (const Agent& a : world.agents) {
        if (!a.in_host) continue;
        const int e = static_cast<int>(a.ethnicity);
        const int s = static_cast<int>(substratum_of(a.ethnicity, a.attitude()));
        ++obs.population[e].host_count;
        sum[e] += a.conservatism;
        if (a.attitude() == Attitude::Liberal) ++liberal[e];
        ++obs.substratum[s].count;
        if (const auto& c = classifications[static_cast<std::size_t>(a.id)]) {
            const int o = static_cast<int>(*c);
            ++pop_outcomes[e][o];
            ++sub_outcomes[s][o];
        }
    }
    for (int e = 0; e < 2; ++e) {
        auto& p = obs.population[e];
        if (p.host_count == 0) continue;
        const double n = static_cast<double>(p.host_count);
        p.mean_conservatism = sum[e] / n;
        p.fraction_liberal = liberal[e] / n;
        p.fraction_conservative = (p.host_count - liberal[e]) / n;
        for (int o = 0; o < 4; ++o) p.outcome[o] = pop_outcomes[e][o] / n;
    }
    for (int s = 0; s < 4; ++s) {
        auto& st = obs.substratum[s];
        st.empty = st.count == 0;
        if (st.empty) continue;
        for (int o = 0; o < 4; ++o) st.outcome[o] = sub_outcomes[s][o] / static_cast<double>(st.count);
    }
    return obs;
}

} // namespace migragent
