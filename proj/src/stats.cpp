#include "migragent/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "migragent/csv_io.hpp"
#include "migragent/error.hpp"

namespace migragent {

void LongTable::add_column(std::string name, std::vector<double> values) {
    if (!order_.empty() && values.size() != rows_)
        throw Error(ErrorKind::Schema, "column '" + name + "' has " + std::to_string(values.size()) +
                                           " rows, expected " + std::to_string(rows_));
    if (has(name)) throw Error(ErrorKind::Schema, "duplicate column '" + name + "'");
    rows_ = values.size();
    order_.push_back(name);
    columns_.emplace(std::move(name), std::move(values));
}

bool LongTable::has(std::string_view name) const { return columns_.find(name) != columns_.end(); }

const std::vector<double>& LongTable::column(std::string_view name) const {
    auto it = columns_.find(name);
    if (it == columns_.end()) throw Error(ErrorKind::Schema, "missing column '" + std::string(name) + "'");
    return it->second;
}

namespace {

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    for (auto& f : out) {
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    }
    return out;
}

} // namespace

LongTable parse_long_csv(std::string_view text) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#' || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (header.empty()) {
            for (auto f : fields) header.emplace_back(f);
            cols.resize(header.size());
            continue;
        }
        if (fields.size() != header.size())
            throw Error(ErrorKind::Schema, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(fields.size()));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            double v = 0.0;
            const auto f = fields[i];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
                if (f == "NA" || f == "nan" || f == "NaN")
                    v = std::numeric_limits<double>::quiet_NaN();
                else
                    throw Error(ErrorKind::Schema, "line " + std::to_string(line_no) + ": non-numeric value '" +
                                                       std::string(f) + "' in column '" + header[i] + "'");
            }
            cols[i].push_back(v);
        }
    }
    if (header.empty()) throw Error(ErrorKind::Schema, "CSV has no header row");
    LongTable table;
    for (std::size_t i = 0; i < header.size(); ++i) table.add_column(header[i], std::move(cols[i]));
    return table;
}

LongTable read_long_csv(const std::string& path) { return parse_long_csv(read_text_file(path)); }

RowGranularity parse_granularity(std::string_view text) {
    if (text == "tick") return RowGranularity::Tick;
    if (text == "replication") return RowGranularity::Replication;
    if (text == "condition") return RowGranularity::Condition;
    throw Error(ErrorKind::InvalidArgument,
                "row granularity must be tick, replication or condition, got '" + std::string(text) + "'");
}

namespace {

constexpr std::string_view kSubstratumNames[] = {"liberal_locals", "conservative_locals", "liberal_migrants",
                                                 "conservative_migrants"};
constexpr std::string_view kOutcomeNames[] = {"integration", "assimilation", "separation", "marginalization"};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// "<sub>_count" column governing an outcome column, or empty.
std::string count_column_for(std::string_view name) {
    for (auto sub : kSubstratumNames)
        for (auto out : kOutcomeNames)
            if (name == std::string(sub) + "_" + std::string(out)) return std::string(sub) + "_count";
    return {};
}

} // namespace

LongTable aggregate_rows(const LongTable& table, RowGranularity granularity) {
    if (granularity == RowGranularity::Tick) return table;
    const auto& cond = table.column("condition");
    const std::vector<double>* rep = granularity == RowGranularity::Replication ? &table.column("replication") : nullptr;

    std::map<std::pair<double, double>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < table.rows(); ++i) groups[{cond[i], rep ? (*rep)[i] : 0.0}].push_back(i);

    LongTable out;
    for (const auto& name : table.names()) {
        const auto& src = table.column(name);
        const auto count_name = count_column_for(name);
        const std::vector<double>* counts = !count_name.empty() && table.has(count_name) ? &table.column(count_name) : nullptr;
        const bool is_count = ends_with(name, "_count");
        std::vector<double> values;
        values.reserve(groups.size());
        for (const auto& [key, rows] : groups) {
            double sum = 0.0;
            std::size_t n = 0;
            for (auto i : rows) {
                if (is_count) {
                    n += src[i] > 0 ? 1 : 0;
                    continue;
                }
                if (counts && (*counts)[i] <= 0) continue;
                sum += src[i];
                ++n;
            }
            if (is_count) values.push_back(static_cast<double>(n));
            else values.push_back(n ? sum / static_cast<double>(n) : 0.0);
        }
        out.add_column(name, std::move(values));
    }
    return out;
}

DesignMatrix build_design(const LongTable& table, std::string_view substratum, std::string_view outcome) {
    if (std::find(std::begin(kSubstratumNames), std::end(kSubstratumNames), substratum) == std::end(kSubstratumNames))
        throw Error(ErrorKind::InvalidArgument, "unknown substratum '" + std::string(substratum) + "'");
    if (std::find(std::begin(kOutcomeNames), std::end(kOutcomeNames), outcome) == std::end(kOutcomeNames))
        throw Error(ErrorKind::InvalidArgument, "unknown outcome '" + std::string(outcome) + "'");

    const std::string sub(substratum);
    const auto& locals = table.column("frac_conservative_locals");
    const auto& migrants = table.column("frac_conservative_migrants");
    const auto& speed = table.column("speed_intake");
    const auto& count = table.column(sub + "_count");
    const auto& response = table.column(sub + "_" + std::string(outcome));

    std::vector<std::size_t> rows;
    std::set<double> levels;
    // Levels come from the whole table so every model codes speed the same way.
    for (std::size_t i = 0; i < table.rows(); ++i) {
        if (std::isfinite(speed[i])) levels.insert(speed[i]);
        if (count[i] > 0) rows.push_back(i);
    }
    if (levels.size() > 2)
        throw Error(ErrorKind::Schema, "speed_intake has " + std::to_string(levels.size()) +
                                           " levels; the speed factor needs at most two");
    const double fast_level = levels.size() == 2 ? *levels.rbegin() : std::numeric_limits<double>::quiet_NaN();

    DesignMatrix d;
    d.columns = {"(Intercept)", "frac_conservative_locals", "frac_conservative_migrants", "speed_fast"};
    d.response = std::string(outcome) + " " + sub;
    d.x.resize(static_cast<Eigen::Index>(rows.size()), 4);
    d.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto i = rows[k];
        const auto r = static_cast<Eigen::Index>(k);
        d.x(r, 0) = 1.0;
        d.x(r, 1) = locals[i];
        d.x(r, 2) = migrants[i];
        d.x(r, 3) = speed[i] == fast_level ? 1.0 : 0.0;
        d.y(r) = response[i];
    }
    for (Eigen::Index r = 0; r < d.x.rows(); ++r)
        for (Eigen::Index c = 0; c < d.x.cols(); ++c)
            if (!std::isfinite(d.x(r, c)) || !std::isfinite(d.y(r)))
                throw Error(ErrorKind::Schema, "missing or non-finite value in row " + std::to_string(rows[r]));
    return d;
}

namespace {

[[noreturn]] void throw_singular(const DesignMatrix& d, const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr) {
    const auto rank = qr.rank();
    const auto& perm = qr.colsPermutation().indices();
    std::vector<Eigen::Index> independent(perm.data(), perm.data() + rank);
    std::sort(independent.begin(), independent.end());
    Eigen::MatrixXd basis(d.x.rows(), static_cast<Eigen::Index>(independent.size()));
    for (std::size_t k = 0; k < independent.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = d.x.col(independent[k]);

    auto name = [&](Eigen::Index c) {
        return c < static_cast<Eigen::Index>(d.columns.size()) ? d.columns[c] : "column " + std::to_string(c);
    };
    std::string msg = "design matrix is singular (rank " + std::to_string(rank) + " of " + std::to_string(d.x.cols()) + ")";
    for (Eigen::Index k = rank; k < d.x.cols(); ++k) {
        const Eigen::Index dep = perm[k];
        const Eigen::VectorXd col = d.x.col(dep);
        msg += ": column '" + name(dep) + "'";
        if (col.norm() == 0.0 || basis.cols() == 0) {
            msg += " is identically zero";
            continue;
        }
        const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(col);
        std::string with;
        for (Eigen::Index j = 0; j < coef.size(); ++j)
            if (std::abs(coef(j)) > 1e-8) with += (with.empty() ? "'" : ", '") + name(independent[static_cast<std::size_t>(j)]) + "'";
        msg += " is collinear with " + (with.empty() ? std::string("the other columns") : with);
    }
    throw Error(ErrorKind::Singular, msg);
}

double two_sided_t_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Eigen::VectorXd ca = a.array() - a.mean();
    const Eigen::VectorXd cb = b.array() - b.mean();
    const double denom = std::sqrt(ca.squaredNorm() * cb.squaredNorm());
    return denom > 0.0 ? ca.dot(cb) / denom : 0.0;
}

} // namespace

RegressionFit fit_ols(const DesignMatrix& d) {
    const auto n = d.x.rows();
    const auto p = d.x.cols();
    if (d.y.size() != n) throw Error(ErrorKind::Shape, "response length does not match design rows");
    if (n <= p)
        throw Error(ErrorKind::Domain, "need more observations than columns (" + std::to_string(n) + " rows, " +
                                           std::to_string(p) + " columns)");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(n, p);
    qr.setThreshold(1e-10);
    qr.compute(d.x);
    if (qr.rank() < p) throw_singular(d, qr);

    const double sst = (d.y.array() - d.y.mean()).square().sum();
    if (!(sst > 0.0)) throw Error(ErrorKind::Domain, "response '" + d.response + "' is constant");

    RegressionFit fit;
    fit.response = d.response;
    fit.n = static_cast<std::size_t>(n);
    const Eigen::VectorXd b = qr.solve(d.y);
    fit.residuals = d.y - d.x * b;
    const double sse = fit.residuals.squaredNorm();
    const double df = static_cast<double>(n - p);
    fit.r2 = std::clamp(1.0 - sse / sst, 0.0, 1.0);
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / df;

    // (X'X)^-1 = P R^-1 R^-T P^T
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    const Eigen::MatrixXd xtx_inv = perm * xtx_inv_perm * perm.transpose();
    const double sigma2 = sse / df;

    const bool has_intercept = d.columns.empty() || d.columns.front() == "(Intercept)";
    for (Eigen::Index j = 0; j < p; ++j) {
        PredictorStats s;
        s.name = j < static_cast<Eigen::Index>(d.columns.size()) ? d.columns[j] : "x" + std::to_string(j);
        s.b = b(j);
        s.std_error = std::sqrt(sigma2 * xtx_inv(j, j));
        s.t = s.std_error > 0.0 ? s.b / s.std_error : std::copysign(std::numeric_limits<double>::infinity(), s.b);
        if (s.b == 0.0 && s.std_error == 0.0) s.t = 0.0;
        s.p_value = two_sided_t_p(s.t, df);
        if (j == 0 && has_intercept) {
            fit.intercept = s;
            continue;
        }
        s.r = correlation(d.x.col(j), d.y);
        // Unique sum of squares of column j is b_j^2 / [(X'X)^-1]_jj.
        s.sr2 = std::max(0.0, s.b * s.b / (xtx_inv(j, j) * sst));
        s.partial_r2 = s.sr2 + (1.0 - fit.r2) > 0.0 ? s.sr2 / (s.sr2 + (1.0 - fit.r2)) : 1.0;
        s.cohen_f2 = fit.r2 < 1.0 ? cohen_f2(s.sr2, fit.r2) : std::numeric_limits<double>::quiet_NaN();
        fit.predictors.push_back(s);
    }

    const double df_model = static_cast<double>(p - (has_intercept ? 1 : 0));
    if (df_model > 0) {
        if (fit.r2 >= 1.0) {
            fit.f_statistic = std::numeric_limits<double>::infinity();
            fit.f_p_value = 0.0;
        } else {
            fit.f_statistic = (fit.r2 / df_model) / ((1.0 - fit.r2) / df);
            boost::math::fisher_f dist(df_model, df);
            fit.f_p_value = boost::math::cdf(boost::math::complement(dist, fit.f_statistic));
        }
    }
    return fit;
}

double cohen_f2(double sr2, double r2) {
    if (!(r2 < 1.0)) throw Error(ErrorKind::Domain, "cohen_f2 requires R2 < 1");
    if (r2 < 0.0 || sr2 < 0.0) throw Error(ErrorKind::Domain, "cohen_f2 requires sr2 >= 0 and R2 >= 0");
    return sr2 / (1.0 - r2);
}

EffectSize effect_size_class(double f2) {
    if (f2 >= 0.35) return EffectSize::Large;
    if (f2 >= 0.15) return EffectSize::Medium;
    if (f2 >= 0.02) return EffectSize::Small;
    return EffectSize::Negligible;
}

std::string_view to_string(EffectSize e) {
    switch (e) {
    case EffectSize::Negligible: return "negligible";
    case EffectSize::Small: return "small";
    case EffectSize::Medium: return "medium";
    case EffectSize::Large: return "large";
    }
    return "?";
}

std::string_view significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    if (p < 0.1) return ".";
    return "";
}

namespace {

std::string display_name(const std::string& column) {
    if (column == "frac_conservative_locals") return "% conservative locals";
    if (column == "frac_conservative_migrants") return "% conservative migrants";
    if (column == "speed_fast") return "Speed intake";
    return column;
}

std::string title_case(std::string s) {
    bool start = true;
    for (char& c : s) {
        if (c == '_' || c == ' ') {
            c = ' ';
            start = true;
        } else if (start) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            start = false;
        }
    }
    return s;
}

std::string fmt(const char* pattern, double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string p_text(double p) {
    std::string s = p < 2e-16 ? std::string("<2e-16") : fmt("%.3g", p);
    const auto stars = significance_stars(p);
    if (!stars.empty()) s += " " + std::string(stars);
    return s;
}

} // namespace

std::string format_fit_text(const RegressionFit& fit) {
    char line[256];
    std::string out = title_case(fit.response) + "\n";
    std::snprintf(line, sizeof line, "%-26s %9s %11s %7s %7s %9s  %s\n", "Predictor", "b", "partial R2", "r", "sr2",
                  "Cohen f2", "p-value");
    out += line;
    for (const auto& s : fit.predictors) {
        std::snprintf(line, sizeof line, "%-26s %9s %11s %7s %7s %9s  %s\n", display_name(s.name).c_str(),
                      fmt("%.3f", s.b).c_str(), fmt("%.3f", s.partial_r2).c_str(), fmt("%.2f", s.r).c_str(),
                      fmt("%.2f", s.sr2).c_str(), fmt("%.2f", s.cohen_f2).c_str(), p_text(s.p_value).c_str());
        out += line;
    }
    std::snprintf(line, sizeof line, "%-26s %9s %47s\n", "(Intercept)", fmt("%.3f", fit.intercept.b).c_str(),
                  p_text(fit.intercept.p_value).c_str());
    out += line;
    std::snprintf(line, sizeof line, "%-26s %9s %47s\n", "R2", fmt("%.3f", fit.r2).c_str(), p_text(fit.f_p_value).c_str());
    out += line;
    std::snprintf(line, sizeof line, "%-26s %9s\n", "Adj R2", fmt("%.3f", fit.adj_r2).c_str());
    out += line;
    out += "n = " + std::to_string(fit.n) + "\n";
    return out;
}

StatsReport build_stats_report(const LongTable& raw, RowGranularity granularity) {
    const LongTable table = aggregate_rows(raw, granularity);
    StatsReport report;
    report.csv = "response,predictor,b,std_error,t,p_value,r,partial_r2,sr2,cohen_f2,effect_size,r2,adj_r2,n\n";
    auto g = [](double v) { return format_g6(v); };
    // Migrants first, as in the usual presentation of these models.
    constexpr std::string_view order[] = {"liberal_migrants", "conservative_migrants", "liberal_locals",
                                          "conservative_locals"};
    for (auto sub : order) {
        for (auto outcome : kOutcomeNames) {
            const std::string name = std::string(outcome) + " " + std::string(sub);
            RegressionFit fit;
            try {
                fit = fit_ols(build_design(table, sub, outcome));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Singular && e.kind() != ErrorKind::Domain) throw;
                report.skipped.push_back(name + ": " + e.what());
                report.text += title_case(name) + "\n  not fitted: " + e.what() + "\n\n";
                continue;
            }
            auto row = [&](const PredictorStats& s, bool intercept) {
                report.csv += fit.response + "," + s.name + "," + g(s.b) + "," + g(s.std_error) + "," + g(s.t) + "," +
                              g(s.p_value) + "," + (intercept ? "NA" : g(s.r)) + "," +
                              (intercept ? "NA" : g(s.partial_r2)) + "," + (intercept ? "NA" : g(s.sr2)) + "," +
                              (intercept ? "NA" : g(s.cohen_f2)) + "," +
                              (intercept || std::isnan(s.cohen_f2) ? "NA" : std::string(to_string(effect_size_class(s.cohen_f2)))) +
                              "," + g(fit.r2) + "," + g(fit.adj_r2) + "," + std::to_string(fit.n) + "\n";
            };
            for (const auto& s : fit.predictors) row(s, false);
            row(fit.intercept, true);
            report.text += format_fit_text(fit) + "\n";
            report.fits.push_back(std::move(fit));
        }
    }
    report.text += "Signif. codes: 0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1\n";
    return report;
}

} // namespace migragent
