#include "migragent/figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <set>

#include "migragent/csv_io.hpp"
#include "migragent/error.hpp"
#include "migragent/svg.hpp"

namespace migragent {

namespace {

std::string speed_name(int speed) { return "speed" + std::to_string(speed); }

// Final tick of every condition keyed by (local level, migrant level, speed).
using FinalMap = std::map<std::tuple<double, double, int>, const TickObservables*>;

HeatmapSpec make_heatmap(const FinalMap& finals, const std::vector<double>& xs, const std::vector<double>& ys,
                         int speed, const std::function<double(const TickObservables&)>& value) {
    HeatmapSpec spec;
    spec.x_levels = xs;
    spec.y_levels = ys;
    spec.values.assign(ys.size(), std::vector<double>(xs.size(), 0.0));
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            auto it = finals.find({xs[ix], ys[iy], speed});
            if (it == finals.end())
                throw Error(ErrorKind::Shape, "no condition for local " + format_g6(xs[ix]) + ", migrant " +
                                                  format_g6(ys[iy]) + ", speed " + std::to_string(speed));
            spec.values[iy][ix] = value(*it->second);
        }
    return spec;
}

} // namespace

std::vector<std::string> render_figures(const std::vector<ConditionSeries>& series, const std::string& out_dir,
                                        std::optional<std::uint32_t> condition) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + out_dir + "': " + ec.message());

    std::vector<std::string> written;
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    std::set<double> xs_set, ys_set;
    std::set<int> speeds;
    FinalMap finals;
    for (const auto& cs : series) {
        if (cs.mean.empty()) continue;
        xs_set.insert(cs.condition.conservatism_local);
        ys_set.insert(cs.condition.conservatism_migrant);
        speeds.insert(cs.condition.speed_intake);
        finals[{cs.condition.conservatism_local, cs.condition.conservatism_migrant, cs.condition.speed_intake}] =
            &cs.mean.back();
    }
    const std::vector<double> xs(xs_set.begin(), xs_set.end()), ys(ys_set.begin(), ys_set.end());
    const bool full_grid = finals.size() == xs.size() * ys.size() * speeds.size();

    if (!condition && full_grid && !finals.empty()) {
        for (auto e : {Ethnicity::Migrant, Ethnicity::Local}) {
            const std::string pop(to_string(e));
            for (int speed : speeds) {
                auto spec = make_heatmap(finals, xs, ys, speed,
                                         [e](const TickObservables& o) { return o.of(e).mean_conservatism; });
                // Frozen agents can push a mean past +-1; widen the scale in steps of 0.25.
                double lo = -1.0, hi = 1.0;
                for (const auto& row : spec.values)
                    for (double v : row) {
                        lo = std::min(lo, std::floor(v * 4.0) / 4.0);
                        hi = std::max(hi, std::ceil(v * 4.0) / 4.0);
                    }
                spec.lo = lo;
                spec.hi = hi;
                spec.title = "Final mean conservatism, " + pop + " population, speed " + std::to_string(speed);
                written.push_back(path("heatmap_conservatism_" + pop + "_" + speed_name(speed) + ".svg"));
                render_heatmap_svg(spec, written.back());

                for (auto o : kOutcomes) {
                    auto ospec = make_heatmap(finals, xs, ys, speed, [e, o](const TickObservables& t) {
                        return t.of(e).outcome[static_cast<int>(o)];
                    });
                    ospec.lo = 0.0;
                    ospec.hi = 1.0;
                    ospec.title = "Final " + std::string(to_string(o)) + ", " + pop + " population, speed " +
                                  std::to_string(speed);
                    written.push_back(path("heatmap_" + std::string(to_string(o)) + "_" + pop + "_" +
                                           speed_name(speed) + ".svg"));
                    render_heatmap_svg(ospec, written.back());
                }
            }
        }
    }

    for (const auto& cs : series) {
        if (cs.mean.empty()) continue;
        if (condition && cs.condition.index != *condition) continue;
        const std::string suffix = "_c" + std::to_string(cs.condition.index) + ".svg";
        const std::string label = "local " + format_g6(cs.condition.conservatism_local) +
                                  ", migrant " + format_g6(cs.condition.conservatism_migrant) +
                                  ", speed " + std::to_string(cs.condition.speed_intake);

        LineChartSpec fractions;
        fractions.title = "Liberal and conservative fractions (" + label + ")";
        fractions.x_start = static_cast<double>(cs.mean.front().tick);
        for (auto e : {Ethnicity::Local, Ethnicity::Migrant}) {
            LineSeries lib{std::string(to_string(e)) + " liberal", {}};
            LineSeries con{std::string(to_string(e)) + " conservative", {}};
            for (const auto& o : cs.mean) {
                lib.values.push_back(o.of(e).fraction_liberal);
                con.values.push_back(o.of(e).fraction_conservative);
            }
            fractions.series.push_back(std::move(lib));
            fractions.series.push_back(std::move(con));
        }
        written.push_back(path("lines_fractions" + suffix));
        render_lines_svg(fractions, written.back());

        for (auto s : kSubstrata) {
            LineChartSpec chart;
            chart.title = "Acculturation of " + std::string(to_string(s)) + " (" + label + ")";
            chart.x_start = fractions.x_start;
            for (auto o : kOutcomes) {
                LineSeries line{std::string(to_string(o)), {}};
                for (const auto& t : cs.mean) line.values.push_back(t.of(s).outcome[static_cast<int>(o)]);
                chart.series.push_back(std::move(line));
            }
            written.push_back(path("lines_" + std::string(to_string(s)) + suffix));
            render_lines_svg(chart, written.back());
        }
    }
    return written;
}

} // namespace migragent
