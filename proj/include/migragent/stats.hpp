#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace migragent {

// Column-oriented numeric table read from a long-format CSV.
class LongTable {
public:
    void add_column(std::string name, std::vector<double> values);
    bool has(std::string_view name) const;
    // Throws Error(Schema) naming the column when it is missing.
    const std::vector<double>& column(std::string_view name) const;
    std::size_t rows() const { return rows_; }
    const std::vector<std::string>& names() const { return order_; }

private:
    std::map<std::string, std::vector<double>, std::less<>> columns_;
    std::vector<std::string> order_;
    std::size_t rows_ = 0;
};

LongTable read_long_csv(const std::string& path);
LongTable parse_long_csv(std::string_view text);

enum class RowGranularity { Tick, Replication, Condition };
RowGranularity parse_granularity(std::string_view text);

// Collapses per-tick rows to per-replication or per-condition means. Outcome
// fractions of a substratum average over the rows where its count is positive;
// the count column becomes the number of such rows.
LongTable aggregate_rows(const LongTable& table, RowGranularity granularity);

struct DesignMatrix {
    Eigen::MatrixXd x;  // column 0 is the intercept
    Eigen::VectorXd y;
    std::vector<std::string> columns;
    std::string response;
};

// Predictors: intercept, frac_conservative_locals, frac_conservative_migrants,
// speed dummy (smallest speed_intake level 0, the other level 1). Rows where
// the substratum is empty are skipped.
DesignMatrix build_design(const LongTable& table, std::string_view substratum, std::string_view outcome);

struct PredictorStats {
    std::string name;
    double b = 0.0;
    double std_error = 0.0;
    double t = 0.0;
    double p_value = 0.0;
    double r = 0.0;           // zero-order correlation with the response
    double partial_r2 = 0.0;
    double sr2 = 0.0;         // squared semi-partial correlation
    double cohen_f2 = 0.0;    // NaN when R2 == 1
};

struct RegressionFit {
    std::string response;
    PredictorStats intercept;
    std::vector<PredictorStats> predictors;
    std::size_t n = 0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double f_statistic = 0.0;
    double f_p_value = 0.0;
    Eigen::VectorXd residuals;
};

// Least squares through column-pivoted Householder QR. Throws Error(Singular)
// naming the collinear columns on rank deficiency, Error(Domain) when there
// are not more rows than columns or the response is constant.
RegressionFit fit_ols(const DesignMatrix& design);

// sr2 / (1 - R2). Throws Error(Domain) for R2 >= 1 or negative inputs.
double cohen_f2(double sr2, double r2);

enum class EffectSize { Negligible, Small, Medium, Large };
EffectSize effect_size_class(double f2);
std::string_view to_string(EffectSize e);

// Significance stars using R's codes.
std::string_view significance_stars(double p);

// Every substratum x outcome model fitted on one table. Models that cannot be
// fitted (singular design, constant response) are listed in `skipped`.
struct StatsReport {
    std::vector<RegressionFit> fits;
    std::vector<std::string> skipped;
    std::string csv;
    std::string text;
};

StatsReport build_stats_report(const LongTable& table, RowGranularity granularity);

// Aligned plain-text block in the layout of a regression summary table.
std::string format_fit_text(const RegressionFit& fit);

} // namespace migragent
