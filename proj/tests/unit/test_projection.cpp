#include <doctest.h>

#include <cmath>
#include <random>

#include "chainfp/projection.hpp"
#include "helpers.hpp"

using namespace chainfp;

namespace {

AdoptionCurve flat_curve(const std::string& name, double level, int years) {
    AdoptionCurve curve{name, {}};
    for (int t = 0; t < years; ++t) curve.points.push_back({t, level});
    return curve;
}

LogisticParams paper_params() { return {779.1e9, 9714478.0, 0.219, 2009}; }

TransactionSeries synthetic_series(const LogisticParams& params, int n) {
    std::vector<TransactionYear> rows;
    for (int i = 0; i < n; ++i) {
        rows.push_back({params.origin_year + i,
                        logistic_value(static_cast<double>(i), params)});
    }
    return TransactionSeries::from_rows(std::move(rows));
}

}  // namespace

TEST_CASE("quantiles: single technology is returned as-is") {
    const auto set = AdoptionCurveSet::from_curves({flat_curve("tv", 0.4, 5)});
    for (double q : {0.1, 0.5, 0.9}) {
        const auto proj = adoption_quantiles(set, q);
        REQUIRE(proj.years.size() == 5);
        for (double f : proj.fraction) CHECK(f == 0.4);
    }
    CHECK(adoption_quantiles(set, 0.5).quantile_label == "tv");
}

TEST_CASE("quantiles: order statistics and interpolation") {
    const auto set = AdoptionCurveSet::from_curves(
        {flat_curve("a", 0.1, 1), flat_curve("b", 0.2, 1), flat_curve("c", 0.9, 1)});
    CHECK(adoption_quantiles(set, 0.5).fraction[0] == doctest::Approx(0.2));

    const auto two = AdoptionCurveSet::from_curves(
        {flat_curve("lo", 0.0, 1), flat_curve("hi", 1.0, 1)});
    CHECK(adoption_quantiles(two, 0.25).fraction[0] == doctest::Approx(0.25));

    CHECK_THROWS_AS(adoption_quantiles(AdoptionCurveSet::from_curves({}), 0.5), EmptySetError);
}

TEST_CASE("quantiles at q=0 and q=1 are the pointwise min and max") {
    const auto curves = load_adoption_curves(testutil::data_dir() / "adoption_curves.csv");
    const auto lo = adoption_quantiles(curves, 0.0);
    const auto hi = adoption_quantiles(curves, 1.0);
    const auto median = adoption_quantiles(curves, 0.5);
    REQUIRE(lo.years == hi.years);
    for (std::size_t i = 0; i < lo.years.size(); ++i) {
        double vmin = 1e9, vmax = -1e9;
        for (const auto& curve : curves.curves()) {
            for (const auto& pt : curve.points) {
                if (pt.years_since_introduction == lo.years[i]) {
                    vmin = std::min(vmin, pt.adoption_fraction);
                    vmax = std::max(vmax, pt.adoption_fraction);
                }
            }
        }
        CHECK(lo.fraction[i] == vmin);
        CHECK(hi.fraction[i] == vmax);
        CHECK(median.fraction[i] >= vmin);
        CHECK(median.fraction[i] <= vmax);
    }
}

TEST_CASE("projection path lookup interpolates and clamps") {
    AdoptionProjection proj;
    proj.years = {0, 10, 20};
    proj.fraction = {0.0, 1.0, 0.5};
    CHECK(proj.fraction_at(-5.0) == 0.0);
    CHECK(proj.fraction_at(5.0) == doctest::Approx(0.5));
    CHECK(proj.fraction_at(15.0) == doctest::Approx(0.75));
    CHECK(proj.fraction_at(50.0) == 0.5);
}

TEST_CASE("adoption emission projection") {
    AdoptionProjection flat_one;
    flat_one.years = {0};
    flat_one.fraction = {1.0};
    const auto traj = project_adoption_emissions(10.0, 1.0, flat_one, 10, 2020);
    REQUIRE(traj.size() == 10);
    CHECK(traj.annual_mtco2().back() == doctest::Approx(10.0));
    CHECK(traj.cumulative_gtco2().back() == doctest::Approx(0.1).epsilon(1e-12));

    AdoptionProjection flat_zero;
    flat_zero.years = {0};
    flat_zero.fraction = {0.0};
    const auto zero = project_adoption_emissions(10.0, 0.5, flat_zero, 10, 2020);
    for (double v : zero.annual_mtco2()) CHECK(v == 0.0);

    CHECK_THROWS_AS(project_adoption_emissions(10.0, 0.0, flat_one, 10, 2020),
                    ZeroCurrentFractionError);
}

TEST_CASE("bundled calibration lands at 17 GtCO2 after a century") {
    const auto curves = load_adoption_curves(testutil::data_dir() / "adoption_curves.csv");
    const auto median = adoption_quantiles(curves, 0.5);
    const auto traj =
        project_adoption_emissions(0.1348, 0.000400972499871, median, 100, 2021);
    CHECK(traj.cumulative_gtco2().back() == doctest::Approx(17.0).epsilon(0.05));
}

TEST_CASE("logistic value: anchors and limits") {
    const auto params = paper_params();
    CHECK(logistic_value(0.0, params) == params.initial_value);  // exact
    CHECK(logistic_value(500.0, params) ==
          doctest::Approx(params.carrying_capacity).epsilon(1e-9));
    // strictly increasing
    std::mt19937_64 rng(70001);
    std::uniform_real_distribution<double> time(-50.0, 150.0);
    for (int i = 0; i < 500; ++i) {
        double t1 = time(rng), t2 = time(rng);
        if (t1 == t2) continue;
        if (t1 > t2) std::swap(t1, t2);
        CHECK(logistic_value(t1, params) < logistic_value(t2, params));
    }
}

TEST_CASE("logistic inversion hits the 2020 observation near t = 11.2") {
    const auto params = paper_params();
    const double t = logistic_inverse(112559843.0, params);
    CHECK(t == doctest::Approx(11.2).epsilon(0.01));
    CHECK(logistic_value(t, params) == doctest::Approx(112559843.0).epsilon(1e-9));
}

TEST_CASE("logistic derivative at t=0 matches central differences") {
    const auto params = paper_params();
    const double analytic = params.growth_rate * params.initial_value *
                            (1.0 - params.initial_value / params.carrying_capacity);
    const double h = 1e-5;
    const double fd = (logistic_value(h, params) - logistic_value(-h, params)) / (2.0 * h);
    CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
}

TEST_CASE("reanchoring shifts the origin without changing the curve") {
    const auto params = paper_params();
    const auto shifted = reanchored(params, 2020);
    CHECK(shifted.origin_year == 2020);
    CHECK(shifted.initial_value == doctest::Approx(logistic_value(11.0, params)).epsilon(1e-15));
    for (double t : {0.0, 5.5, 40.0}) {
        CHECK(logistic_value(t, shifted) ==
              doctest::Approx(logistic_value(t + 11.0, params)).epsilon(1e-12));
    }
}

TEST_CASE("fit recovers noise-free synthetic parameters to 1e-6") {
    const LogisticParams truth{1e6, 1e3, 0.3, 2009};
    const auto series = synthetic_series(truth, 12);
    const auto fit = fit_logistic(series, truth.carrying_capacity);
    CHECK(fit.params.initial_value ==
          doctest::Approx(truth.initial_value).epsilon(1e-6));
    CHECK(fit.params.growth_rate == doctest::Approx(truth.growth_rate).epsilon(1e-6));
    CHECK(fit.params.origin_year == 2009);
    CHECK(fit.residual < 1e-12);

    // same story with the published curve constants
    const auto paper_series = synthetic_series(paper_params(), 12);
    const auto paper_fit = fit_logistic(paper_series, paper_params().carrying_capacity);
    CHECK(paper_fit.params.initial_value ==
          doctest::Approx(paper_params().initial_value).epsilon(1e-6));
    CHECK(paper_fit.params.growth_rate ==
          doctest::Approx(paper_params().growth_rate).epsilon(1e-6));
}

TEST_CASE("fit rejects thin or flat series") {
    CHECK_THROWS_AS(fit_logistic(TransactionSeries::from_rows({{2009, 10.0}, {2010, 20.0}}), 1e6),
                    InsufficientDataError);

    std::vector<TransactionYear> flat;
    for (int i = 0; i < 10; ++i) flat.push_back({2009 + i, 500.0});
    CHECK_THROWS_AS(fit_logistic(TransactionSeries::from_rows(std::move(flat)), 1e6),
                    FitDivergenceError);

    CHECK_THROWS_AS(
        fit_logistic(TransactionSeries::from_rows({{2009, 10.0}, {2010, 20.0}, {2011, 30.0}}),
                     25.0),
        DomainError);  // capacity below the largest observation
}

TEST_CASE("logistic emission projection") {
    // window where the curve sits flat at capacity: constant emissions
    LogisticParams saturated{1e6, 999999.0, 0.5, 2020};
    const auto traj = project_logistic_emissions(5.0, 999999.0, saturated, 20, 2020);
    CHECK(traj.annual_mtco2().front() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(traj.annual_mtco2().back() == doctest::Approx(5.0).epsilon(1e-4));

    const auto zero = project_logistic_emissions(0.0, 1000.0, paper_params(), 10, 2020);
    for (double v : zero.annual_mtco2()) CHECK(v == 0.0);

    CHECK_THROWS_AS(project_logistic_emissions(5.0, 0.0, paper_params(), 10, 2020),
                    ZeroBaselineTxError);
}

TEST_CASE("trajectory cumulative equals an independent prefix sum") {
    std::mt19937_64 rng(70002);
    std::uniform_real_distribution<double> emission(0.0, 500.0);
    std::vector<double> annual;
    for (int i = 0; i < 100; ++i) annual.push_back(emission(rng));
    const auto traj = EmissionTrajectory::from_annual(2020, annual);
    REQUIRE(traj.cumulative_gtco2().size() == annual.size());
    for (std::size_t i = 0; i < annual.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j <= i; ++j) sum += annual[j];
        CHECK(traj.cumulative_gtco2()[i] == doctest::Approx(sum / 1000.0).epsilon(1e-9));
        if (i > 0) CHECK(traj.cumulative_gtco2()[i] >= traj.cumulative_gtco2()[i - 1]);
    }
    CHECK_THROWS_AS(EmissionTrajectory::from_annual(2020, {1.0, -2.0}), DomainError);
}

TEST_CASE("temperature rise: linearity, scaling, ordering") {
    const auto traj = EmissionTrajectory::from_annual(2020, {1000e3});  // 1000 Gt in one year
    ClimateParams climate;
    const auto bands = temperature_rise(traj, climate);
    CHECK(bands.mean_c[0] == doctest::Approx(0.45).epsilon(1e-12));

    const auto zero = temperature_rise(EmissionTrajectory::from_annual(2020, {0.0, 0.0}), climate);
    for (double v : zero.mean_c) CHECK(v == 0.0);

    // doubling cumulative emissions doubles every band exactly
    const auto doubled = temperature_rise(EmissionTrajectory::from_annual(2020, {2000e3}), climate);
    CHECK(doubled.mean_c[0] == 2.0 * bands.mean_c[0]);
    CHECK(doubled.low_c[0] == 2.0 * bands.low_c[0]);
    CHECK(doubled.high_c[0] == 2.0 * bands.high_c[0]);

    std::mt19937_64 rng(70003);
    std::uniform_real_distribution<double> emission(0.0, 1e5);
    std::vector<double> annual;
    for (int i = 0; i < 50; ++i) annual.push_back(emission(rng));
    const auto random_bands =
        temperature_rise(EmissionTrajectory::from_annual(2020, annual), climate);
    for (std::size_t i = 0; i < annual.size(); ++i) {
        CHECK(random_bands.low_c[i] <= random_bands.mean_c[i]);
        CHECK(random_bands.mean_c[i] <= random_bands.high_c[i]);
    }

    ClimateParams bad;
    bad.lambda_low_c_per_gtco2 = bad.lambda_high_c_per_gtco2 * 2.0;
    CHECK_THROWS_AS(temperature_rise(traj, bad), DomainError);
}

TEST_CASE("crossing year on a linear ramp") {
    // 0 -> 3 C over 100 years from 2020: 1.5 C falls exactly on 2070
    std::vector<double> ramp;
    for (int i = 0; i <= 100; ++i) ramp.push_back(3.0 * i / 100.0);
    const auto crossing = crossing_year(ramp, 2020, 1.5);
    REQUIRE(crossing.has_value());
    CHECK(crossing->year == 2070);
    CHECK(crossing->fractional_year == doctest::Approx(2070.0).epsilon(1e-12));

    const std::vector<double> zeros(50, 0.0);
    CHECK_FALSE(crossing_year(zeros, 2020, 1.5).has_value());

    const std::vector<double> positive{0.2, 0.4};
    const auto immediate = crossing_year(positive, 2020, 0.0);
    REQUIRE(immediate.has_value());
    CHECK(immediate->year == 2020);
}
