#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainfp/ingest.hpp"
#include "chainfp/units.hpp"

namespace chainfp {

/// A single adoption-fraction path over offsets from a start point: either a
/// cross-technology quantile or one technology's own history.
struct AdoptionProjection {
    std::vector<int> years;        // offsets, strictly increasing
    std::vector<double> fraction;  // in [0,1], same length
    std::string quantile_label;

    /// Fraction at an arbitrary offset: linear interpolation between listed
    /// offsets, clamped to the first/last value outside the listed range.
    double fraction_at(double offset) const;
};

/// Pointwise q-quantile of adoption fraction across every technology with
/// data at each offset (linear interpolation between order statistics).
/// q in (0,1) plus the closed endpoints 0 (min) and 1 (max).
AdoptionProjection adoption_quantiles(const AdoptionCurveSet& curves, double q);

/// Bounded S-curve with carrying capacity K, initial value P(0) and
/// intrinsic growth rate. Time is measured in years from origin_year.
struct LogisticParams {
    double carrying_capacity = 779.1e9;  // transactions/yr at saturation
    double initial_value = 9714478.0;    // transactions/yr at t = 0
    double growth_rate = 0.219;          // 1/yr
    int origin_year = 2009;
};

void validate(const LogisticParams& params);

/// Exact logistic evaluation; strictly increasing in t, P(0) == initial
/// value, supremum = carrying capacity.
double logistic_value(double t_years, const LogisticParams& params);

/// Inverse of logistic_value for value in (0, K).
double logistic_inverse(double value, const LogisticParams& params);

/// Same curve re-expressed with t = 0 at new_origin_year.
LogisticParams reanchored(const LogisticParams& params, int new_origin_year);

struct LogisticFit {
    LogisticParams params;
    double residual = 0.0;  // sum of squared log-space residuals
    int iterations = 0;
};

/// Least-squares fit of (initial_value, growth_rate) in log space with the
/// carrying capacity held fixed. Deterministic: coarse grid search followed
/// by damped Gauss-Newton refinement. Throws InsufficientDataError for
/// fewer than 3 points and FitDivergenceError when the growth rate runs to
/// the zero boundary (no growth signal) or refinement fails to converge.
LogisticFit fit_logistic(const TransactionSeries& series, double carrying_capacity);

/// Annual (MtCO2/yr) and running cumulative (GtCO2) emissions over a
/// horizon. Annual values are non-negative, so the cumulative series is
/// non-decreasing.
class EmissionTrajectory {
public:
    static EmissionTrajectory from_annual(int start_year, std::vector<double> annual_mtco2);

    int start_year() const { return start_year_; }
    const std::vector<double>& annual_mtco2() const { return annual_; }
    const std::vector<double>& cumulative_gtco2() const { return cumulative_; }
    std::size_t size() const { return annual_.size(); }

private:
    EmissionTrajectory() = default;
    int start_year_ = 0;
    std::vector<double> annual_;
    std::vector<double> cumulative_;
};

/// Scales the adoption path so that full adoption emits
/// baseline_annual / current_fraction per year: annual[t] = that total
/// times the path fraction at offset t.
EmissionTrajectory project_adoption_emissions(double baseline_annual_mtco2,
                                              double current_fraction,
                                              const AdoptionProjection& adoption,
                                              int horizon_years, int start_year);

/// Validation cost scales with transaction volume: annual[t] =
/// baseline_annual x P(t) / baseline_transactions.
EmissionTrajectory project_logistic_emissions(double baseline_annual_mtco2,
                                              double baseline_transactions,
                                              const LogisticParams& params, int horizon_years,
                                              int start_year);

/// Linear cumulative-emissions-to-warming coefficients, degC per GtCO2,
/// with an uncertainty band.
struct ClimateParams {
    double lambda_low_c_per_gtco2 = 0.6 * 4.5e-4;
    double lambda_mean_c_per_gtco2 = 4.5e-4;
    double lambda_high_c_per_gtco2 = 1.6 * 4.5e-4;
};

void validate(const ClimateParams& params);

struct TemperatureBands {
    std::vector<double> low_c;
    std::vector<double> mean_c;
    std::vector<double> high_c;
};

/// dT_band[t] = lambda_band x cumulative[t]; bands are ordered low <= mean
/// <= high pointwise.
TemperatureBands temperature_rise(const EmissionTrajectory& trajectory,
                                  const ClimateParams& climate);

struct ThresholdCrossing {
    int year = 0;                 // first calendar year with dT >= threshold
    double fractional_year = 0.0; // linear interpolation inside that year
};

/// First calendar year where the series reaches the threshold, or nullopt.
std::optional<ThresholdCrossing> crossing_year(std::span<const double> delta_t_c, int start_year,
                                               double threshold_c);

}  // namespace chainfp
