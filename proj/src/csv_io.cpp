#include "migragent/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "migragent/error.hpp"
#include "migragent/stats.hpp"

namespace migragent {

std::string format_g6(double v) {
    if (v == 0.0) return "0";  // also folds -0
    if (std::isnan(v)) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

constexpr Ethnicity kPopulations[] = {Ethnicity::Local, Ethnicity::Migrant};

} // namespace

std::vector<std::string> timeseries_columns() {
    std::vector<std::string> cols = {"condition", "tick", "conservatism_local", "conservatism_migrant", "speed_intake"};
    for (auto e : kPopulations) {
        const std::string p(to_string(e));
        for (const char* f : {"host_count", "mean_conservatism", "fraction_liberal", "fraction_conservative"})
            cols.push_back(p + "_" + f);
        for (auto o : kOutcomes) cols.push_back(p + "_" + std::string(to_string(o)));
    }
    for (auto s : kSubstrata) {
        const std::string n(to_string(s));
        cols.push_back(n + "_count");
        cols.push_back(n + "_empty");
        for (auto o : kOutcomes) cols.push_back(n + "_" + std::string(to_string(o)));
    }
    return cols;
}

std::string timeseries_csv_text(const std::vector<ConditionSeries>& series) {
    std::string out = std::string(kTimeseriesSchema) + "\n";
    const auto cols = timeseries_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
    for (const auto& cs : series) {
        const auto& c = cs.condition;
        for (const auto& o : cs.mean) {
            std::vector<std::string> f = {std::to_string(c.index), std::to_string(o.tick), format_g6(c.conservatism_local),
                                          format_g6(c.conservatism_migrant), std::to_string(c.speed_intake)};
            for (const auto& p : o.population) {
                f.push_back(std::to_string(p.host_count));
                f.push_back(format_g6(p.mean_conservatism));
                f.push_back(format_g6(p.fraction_liberal));
                f.push_back(format_g6(p.fraction_conservative));
                for (double v : p.outcome) f.push_back(format_g6(v));
            }
            for (const auto& s : o.substratum) {
                f.push_back(std::to_string(s.count));
                f.push_back(s.empty ? "1" : "0");
                for (double v : s.outcome) f.push_back(format_g6(v));
            }
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) out += ',';
                out += f[i];
            }
            out += '\n';
        }
    }
    return out;
}

void write_timeseries_csv(const std::vector<ConditionSeries>& series, const std::string& path) {
    write_text_file(path, timeseries_csv_text(series));
}

std::vector<ConditionSeries> parse_timeseries_csv(const std::string& text) {
    const LongTable t = parse_long_csv(text);
    const auto cols = timeseries_columns();
    for (const auto& c : cols) (void)t.column(c);

    std::vector<ConditionSeries> out;
    std::map<long long, std::size_t> slot;
    const auto& cond = t.column("condition");
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto key = std::llround(cond[r]);
        auto [it, inserted] = slot.emplace(key, out.size());
        if (inserted) {
            ConditionSeries cs;
            cs.condition.index = static_cast<std::uint32_t>(key);
            cs.condition.conservatism_local = t.column("conservatism_local")[r];
            cs.condition.conservatism_migrant = t.column("conservatism_migrant")[r];
            cs.condition.speed_intake = static_cast<int>(std::lround(t.column("speed_intake")[r]));
            out.push_back(std::move(cs));
        }
        TickObservables o;
        o.tick = std::llround(t.column("tick")[r]);
        for (auto e : kPopulations) {
            const std::string p(to_string(e));
            auto& ps = o.population[static_cast<int>(e)];
            ps.host_count = std::llround(t.column(p + "_host_count")[r]);
            ps.mean_conservatism = t.column(p + "_mean_conservatism")[r];
            ps.fraction_liberal = t.column(p + "_fraction_liberal")[r];
            ps.fraction_conservative = t.column(p + "_fraction_conservative")[r];
            for (auto oc : kOutcomes) ps.outcome[static_cast<int>(oc)] = t.column(p + "_" + std::string(to_string(oc)))[r];
        }
        for (auto s : kSubstrata) {
            const std::string n(to_string(s));
            auto& ss = o.substratum[static_cast<int>(s)];
            ss.count = std::llround(t.column(n + "_count")[r]);
            ss.empty = t.column(n + "_empty")[r] != 0.0;
            for (auto oc : kOutcomes) ss.outcome[static_cast<int>(oc)] = t.column(n + "_" + std::string(to_string(oc)))[r];
        }
        out[it->second].mean.push_back(o);
    }
    return out;
}

std::vector<ConditionSeries> read_timeseries_csv(const std::string& path) {
    return parse_timeseries_csv(read_text_file(path));
}

namespace {

void write_long_rows(std::ostream& out, const std::vector<LongRow>& rows) {
    out << kLongSchema << "\n";
    out << "condition,replication,tick,speed_intake,conservatism_local,conservatism_migrant,"
           "frac_conservative_locals,frac_conservative_migrants";
    for (auto s : kSubstrata) {
        const std::string n(to_string(s));
        out << "," << n << "_count";
        for (auto o : kOutcomes) out << "," << n << "_" << to_string(o);
    }
    out << "\n";
    std::string line;
    for (const auto& r : rows) {
        line = std::to_string(r.condition) + "," + std::to_string(r.replication) + "," + std::to_string(r.tick) + "," +
               std::to_string(r.speed_intake) + "," + format_g6(r.conservatism_local) + "," +
               format_g6(r.conservatism_migrant) + "," + format_g6(r.frac_conservative_locals) + "," +
               format_g6(r.frac_conservative_migrants);
        for (int s = 0; s < 4; ++s) {
            line += "," + std::to_string(r.substratum_count[s]);
            for (double v : r.outcome[s]) line += "," + format_g6(v);
        }
        line += "\n";
        out << line;
    }
}

} // namespace

std::string long_csv_text(const std::vector<LongRow>& rows) {
    std::ostringstream out;
    write_long_rows(out, rows);
    return out.str();
}

void write_long_csv(const std::vector<LongRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    write_long_rows(out, rows);
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

void write_sweep_outputs(const SweepResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + dir + "': " + ec.message());
    std::vector<ConditionSeries> sd, final_tick;
    for (const auto& cs : result.conditions) {
        sd.push_back({cs.condition, cs.sd, {}});
        ConditionSeries last{cs.condition, {}, {}};
        if (!cs.mean.empty()) last.mean.push_back(cs.mean.back());
        final_tick.push_back(std::move(last));
    }
    const fs::path base(dir);
    write_timeseries_csv(result.conditions, (base / "timeseries.csv").string());
    write_timeseries_csv(sd, (base / "timeseries_sd.csv").string());
    write_timeseries_csv(final_tick, (base / "final.csv").string());
    write_long_csv(result.long_rows, (base / "long.csv").string());
}

} // namespace migragent
