#include <doctest.h>

#include <cmath>
#include <random>

#include "migragent/error.hpp"
#include "migragent/stats.hpp"
#include "ols_oracle.hpp"

using namespace migragent;
using migragent::testing::reference_ols;

namespace {

// Two-sided p-value of Student's t by Simpson integration of the density.
double reference_t_p(double t, double df) {
    const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) / std::sqrt(df * M_PI);
    auto pdf = [&](double x) { return c * std::pow(1 + x * x / df, -(df + 1) / 2); };
    const int n = 200000;
    const double a = 0, b = std::abs(t), h = (b - a) / n;
    double s = pdf(a) + pdf(b);
    for (int i = 1; i < n; ++i) s += pdf(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return 1.0 - 2.0 * s * h / 3.0;
}

DesignMatrix random_design(std::mt19937_64& eng, int n, int k) {
    std::normal_distribution<double> z(0.0, 1.0);
    DesignMatrix d;
    d.x.resize(n, k + 1);
    d.y.resize(n);
    d.columns.push_back("(Intercept)");
    for (int j = 0; j < k; ++j) d.columns.push_back("x" + std::to_string(j + 1));
    for (int i = 0; i < n; ++i) {
        d.x(i, 0) = 1;
        double y = 0.3;
        for (int j = 1; j <= k; ++j) {
            d.x(i, j) = z(eng) + (j > 1 ? 0.4 * d.x(i, j - 1) : 0.0);
            y += (0.5 - 0.3 * j) * d.x(i, j);
        }
        d.y(i) = y + z(eng);
    }
    d.response = "y";
    return d;
}

DesignMatrix drop_column(const DesignMatrix& d, Eigen::Index j) {
    DesignMatrix r;
    r.x.resize(d.x.rows(), d.x.cols() - 1);
    for (Eigen::Index c = 0, k = 0; c < d.x.cols(); ++c)
        if (c != j) r.x.col(k++) = d.x.col(c);
    r.y = d.y;
    r.columns = d.columns;
    r.columns.erase(r.columns.begin() + j);
    r.response = d.response;
    return r;
}

LongTable long_table(const std::vector<double>& locals, const std::vector<double>& migrants,
                     const std::vector<double>& speed, const std::vector<double>& count,
                     const std::vector<double>& response) {
    LongTable t;
    t.add_column("frac_conservative_locals", locals);
    t.add_column("frac_conservative_migrants", migrants);
    t.add_column("speed_intake", speed);
    t.add_column("liberal_migrants_count", count);
    t.add_column("liberal_migrants_integration", response);
    return t;
}

} // namespace

TEST_CASE("an exact linear relation gives R2 = 1") {
    DesignMatrix d;
    d.x.resize(6, 2);
    d.y.resize(6);
    for (int i = 0; i < 6; ++i) {
        d.x(i, 0) = 1;
        d.x(i, 1) = i;
        d.y(i) = 2 + 3 * i;
    }
    d.columns = {"(Intercept)", "x"};
    const auto fit = fit_ols(d);
    CHECK(fit.intercept.b == doctest::Approx(2));
    CHECK(fit.predictors[0].b == doctest::Approx(3));
    CHECK(fit.r2 == doctest::Approx(1));
    CHECK(std::isnan(fit.predictors[0].cohen_f2));
}

TEST_CASE("duplicated columns are reported as singular") {
    std::mt19937_64 eng(1);
    auto d = random_design(eng, 30, 2);
    d.x.col(2) = d.x.col(1);
    try {
        fit_ols(d);
        FAIL("expected a singular design");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Singular);
        const std::string msg = e.what();
        CHECK(msg.find("x1") != std::string::npos);
        CHECK(msg.find("x2") != std::string::npos);
    }
    d.x.col(2).setZero();
    try {
        fit_ols(d);
        FAIL("expected a singular design");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("'x2' is identically zero") != std::string::npos);
    }
}

TEST_CASE("degenerate inputs are domain errors") {
    std::mt19937_64 eng(2);
    auto d = random_design(eng, 3, 2);
    CHECK_THROWS_AS(fit_ols(d), Error);
    d = random_design(eng, 10, 2);
    d.y.setConstant(0.5);
    try {
        fit_ols(d);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("OLS agrees with a long double normal-equations oracle") {
    std::mt19937_64 eng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + trial % 4;
        const auto d = random_design(eng, 12 + trial, k);
        const auto fit = fit_ols(d);
        const auto ref = reference_ols(d.x, d.y);
        CHECK(fit.intercept.b == doctest::Approx(static_cast<double>(ref.b[0])).epsilon(1e-8));
        CHECK(fit.intercept.std_error == doctest::Approx(static_cast<double>(ref.se[0])).epsilon(1e-8));
        for (int j = 0; j < k; ++j) {
            CHECK(fit.predictors[j].b == doctest::Approx(static_cast<double>(ref.b[j + 1])).epsilon(1e-8));
            CHECK(fit.predictors[j].std_error == doctest::Approx(static_cast<double>(ref.se[j + 1])).epsilon(1e-8));
        }
        CHECK(fit.r2 == doctest::Approx(static_cast<double>(ref.r2)).epsilon(1e-8));
        const double n = d.x.rows(), p = d.x.cols();
        CHECK(fit.adj_r2 == doctest::Approx(1 - (1 - fit.r2) * (n - 1) / (n - p)));
        if (trial < 5) {
            for (const auto& s : fit.predictors)
                CHECK(s.p_value == doctest::Approx(reference_t_p(s.t, n - p)).epsilon(1e-6));
        }
    }
}

TEST_CASE("p-values at known points") {
    // Two-sided p for t = 2.0 with 10 df is 0.07338803.
    DesignMatrix d;
    d.x.resize(12, 2);
    d.y.resize(12);
    std::mt19937_64 eng(3);
    std::normal_distribution<double> z;
    for (int i = 0; i < 12; ++i) {
        d.x(i, 0) = 1;
        d.x(i, 1) = z(eng);
        d.y(i) = 0.4 * d.x(i, 1) + z(eng);
    }
    const auto fit = fit_ols(d);
    CHECK(fit.predictors[0].p_value == doctest::Approx(reference_t_p(fit.predictors[0].t, 10)).epsilon(1e-6));
    CHECK(reference_t_p(2.0, 10) == doctest::Approx(0.07338803).epsilon(1e-6));
    // With one predictor, F = t^2 and both tests agree.
    CHECK(fit.f_statistic == doctest::Approx(fit.predictors[0].t * fit.predictors[0].t));
    CHECK(fit.f_p_value == doctest::Approx(fit.predictors[0].p_value));
}

TEST_CASE("semi-partial correlations equal the R2 drop on refit") {
    std::mt19937_64 eng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = random_design(eng, 40, 3);
        const auto fit = fit_ols(d);
        for (Eigen::Index j = 1; j < d.x.cols(); ++j) {
            const auto reduced = fit_ols(drop_column(d, j));
            const auto& s = fit.predictors[static_cast<std::size_t>(j - 1)];
            CHECK(s.sr2 == doctest::Approx(fit.r2 - reduced.r2).epsilon(1e-9));
            CHECK(s.partial_r2 == doctest::Approx((fit.r2 - reduced.r2) / (1 - reduced.r2)).epsilon(1e-9));
            CHECK(s.cohen_f2 == doctest::Approx(s.sr2 / (1 - fit.r2)));
        }
    }
}

TEST_CASE("fit invariants") {
    std::mt19937_64 eng(5);
    const auto d = random_design(eng, 50, 3);
    const auto fit = fit_ols(d);
    // Residuals of a model with intercept are centred and orthogonal to X.
    CHECK(fit.residuals.sum() == doctest::Approx(0).epsilon(1e-9));
    for (Eigen::Index j = 0; j < d.x.cols(); ++j) CHECK(std::abs(d.x.col(j).dot(fit.residuals)) < 1e-9);
    CHECK(fit.r2 >= 0.0);
    CHECK(fit.r2 <= 1.0);

    // Rescaling a predictor rescales its coefficient and leaves R2, t and sr2 alone.
    auto scaled = d;
    scaled.x.col(2) *= 10.0;
    const auto sfit = fit_ols(scaled);
    CHECK(sfit.r2 == doctest::Approx(fit.r2));
    CHECK(sfit.predictors[1].b == doctest::Approx(fit.predictors[1].b / 10.0));
    CHECK(sfit.predictors[1].t == doctest::Approx(fit.predictors[1].t));
    CHECK(sfit.predictors[1].sr2 == doctest::Approx(fit.predictors[1].sr2));

    // Shifting the response only moves the intercept.
    auto shifted = d;
    shifted.y.array() += 3.0;
    const auto shfit = fit_ols(shifted);
    CHECK(shfit.intercept.b == doctest::Approx(fit.intercept.b + 3.0));
    CHECK(shfit.predictors[0].b == doctest::Approx(fit.predictors[0].b));
}

TEST_CASE("Cohen's f2 from sr2 and R2") {
    CHECK(cohen_f2(0.12, 0.570) == doctest::Approx(0.2791).epsilon(1e-3));
    CHECK(cohen_f2(0.20, 0.388) == doctest::Approx(0.327).epsilon(1e-3));
    CHECK(cohen_f2(0.28, 0.303) == doctest::Approx(0.402).epsilon(1e-3));
    CHECK(cohen_f2(0.0, 0.5) == 0.0);
    CHECK_THROWS_AS(cohen_f2(0.1, 1.0), Error);
    CHECK_THROWS_AS(cohen_f2(-0.1, 0.5), Error);
    // Monotone in sr2 at fixed R2 and in R2 at fixed sr2.
    CHECK(cohen_f2(0.1, 0.5) < cohen_f2(0.2, 0.5));
    CHECK(cohen_f2(0.1, 0.5) < cohen_f2(0.1, 0.6));
}

TEST_CASE("effect-size classes") {
    CHECK(effect_size_class(0.0) == EffectSize::Negligible);
    CHECK(effect_size_class(0.019) == EffectSize::Negligible);
    CHECK(effect_size_class(0.02) == EffectSize::Small);
    CHECK(effect_size_class(0.15) == EffectSize::Medium);
    CHECK(effect_size_class(0.28) == EffectSize::Medium);
    CHECK(effect_size_class(0.35) == EffectSize::Large);
    CHECK(effect_size_class(0.40) == EffectSize::Large);
    CHECK(to_string(EffectSize::Medium) == "medium");
    CHECK(significance_stars(0.0005) == "***");
    CHECK(significance_stars(0.2).empty());
}

TEST_CASE("design rows, speed dummy and empty substrata") {
    const auto t = long_table({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, {0.6, 0.2, 0.5, 0.1, 0.3, 0.4},
                              {1, 100, 1, 100, 1, 100}, {5, 4, 0, 3, 2, 1}, {0.1, 0.5, 0.9, 0.3, 0.2, 0.7});
    const auto d = build_design(t, "liberal_migrants", "integration");
    REQUIRE(d.x.rows() == 5);  // the row with count 0 is dropped
    CHECK(d.columns == std::vector<std::string>{"(Intercept)", "frac_conservative_locals",
                                                "frac_conservative_migrants", "speed_fast"});
    CHECK(d.x(0, 3) == 0.0);
    CHECK(d.x(1, 3) == 1.0);
    CHECK(d.x(2, 1) == 0.4);
    CHECK(d.y(2) == 0.3);
    CHECK_THROWS_AS(build_design(t, "nobody", "integration"), Error);
    CHECK_THROWS_AS(build_design(t, "liberal_migrants", "bliss"), Error);
}

TEST_CASE("speed coding uses the levels of the whole table") {
    // The substratum is only present in fast rows; they are still coded 1.
    const auto t = long_table({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, {0.6, 0.2, 0.5, 0.1, 0.3, 0.4},
                              {1, 100, 1, 100, 1, 100}, {0, 4, 0, 3, 0, 1}, {0.1, 0.5, 0.9, 0.3, 0.2, 0.7});
    const auto d = build_design(t, "liberal_migrants", "integration");
    REQUIRE(d.x.rows() == 3);
    for (Eigen::Index r = 0; r < 3; ++r) CHECK(d.x(r, 3) == 1.0);
}

TEST_CASE("a table with only one speed level cannot estimate the speed effect") {
    std::vector<double> a, b, s, c, y;
    for (int i = 0; i < 10; ++i) {
        a.push_back(0.1 * i);
        b.push_back(0.05 * ((i * 7) % 10));
        s.push_back(1);
        c.push_back(3);
        y.push_back(0.02 * ((i * 3) % 10));
    }
    const auto d = build_design(long_table(a, b, s, c, y), "liberal_migrants", "integration");
    try {
        fit_ols(d);
        FAIL("expected a singular design");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Singular);
        CHECK(std::string(e.what()).find("speed_fast") != std::string::npos);
    }
}

TEST_CASE("three speed levels are a schema error") {
    const auto t = long_table({0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}, {1, 50, 100}, {1, 1, 1}, {0.1, 0.2, 0.3});
    CHECK_THROWS_AS(build_design(t, "liberal_migrants", "integration"), Error);
}

TEST_CASE("missing columns are named") {
    LongTable t;
    t.add_column("frac_conservative_locals", {0.1});
    try {
        build_design(t, "liberal_migrants", "integration");
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Schema);
        CHECK(std::string(e.what()).find("frac_conservative_migrants") != std::string::npos);
    }
}

TEST_CASE("long CSV parsing") {
    const auto t = parse_long_csv("# migragent-long v1\ncondition,replication,tick,x\n0,0,0,1.5\n0,0,1,NA\n");
    CHECK(t.rows() == 2);
    CHECK(t.column("x")[0] == 1.5);
    CHECK(std::isnan(t.column("x")[1]));
    CHECK_THROWS_AS(parse_long_csv("a,b\n1\n"), Error);
    CHECK_THROWS_AS(parse_long_csv("a,b\n1,zz\n"), Error);
    CHECK_THROWS_AS(parse_long_csv(""), Error);
}

TEST_CASE("row aggregation by replication and condition") {
    LongTable t;
    t.add_column("condition", {0, 0, 0, 0, 1, 1});
    t.add_column("replication", {0, 0, 1, 1, 0, 0});
    t.add_column("frac_conservative_locals", {0.2, 0.4, 0.6, 0.8, 1.0, 0.0});
    t.add_column("liberal_migrants_count", {2, 0, 3, 1, 0, 0});
    t.add_column("liberal_migrants_integration", {0.5, 0.0, 0.1, 0.3, 0.0, 0.0});
    const auto rep = aggregate_rows(t, RowGranularity::Replication);
    REQUIRE(rep.rows() == 3);
    CHECK(rep.column("frac_conservative_locals")[0] == doctest::Approx(0.3));
    CHECK(rep.column("liberal_migrants_integration")[0] == doctest::Approx(0.5));  // empty tick skipped
    CHECK(rep.column("liberal_migrants_integration")[1] == doctest::Approx(0.2));
    CHECK(rep.column("liberal_migrants_count")[0] == 1);
    CHECK(rep.column("liberal_migrants_count")[2] == 0);
    const auto cond = aggregate_rows(t, RowGranularity::Condition);
    REQUIRE(cond.rows() == 2);
    CHECK(cond.column("frac_conservative_locals")[0] == doctest::Approx(0.5));
    CHECK(cond.column("liberal_migrants_integration")[0] == doctest::Approx(0.3));
    CHECK(parse_granularity("tick") == RowGranularity::Tick);
    CHECK_THROWS_AS(parse_granularity("hour"), Error);
}

TEST_CASE("format_fit_text lays out one line per predictor") {
    std::mt19937_64 eng(8);
    auto d = random_design(eng, 30, 2);
    d.response = "integration liberal_migrants";
    const auto text = format_fit_text(fit_ols(d));
    CHECK(text.rfind("Integration Liberal Migrants\n", 0) == 0);
    CHECK(text.find("x1") != std::string::npos);
    CHECK(text.find("Adj R2") != std::string::npos);
    CHECK(text.find("n = 30") != std::string::npos);
}
