#include "chainfp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "chainfp/errors.hpp"

namespace chainfp {

namespace {

// Quantile with linear interpolation between order statistics at rank
// q * (n - 1); q = 0 and q = 1 give the pointwise min / max.
double interpolated_quantile(std::vector<double>& values, double q) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n == 1) return values[0];
    const double rank = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    if (lo >= n - 1) return values[n - 1];
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::string quantile_name(double q) {
    if (q == 0.0) return "min";
    if (q == 1.0) return "max";
    if (q == 0.5) return "median";
    char buf[24];
    std::snprintf(buf, sizeof buf, "p%g", q * 100.0);
    return buf;
}

}  // namespace

double AdoptionProjection::fraction_at(double offset) const {
    if (years.empty()) return 0.0;
    if (offset <= years.front()) return fraction.front();
    if (offset >= years.back()) return fraction.back();
    const auto it = std::upper_bound(years.begin(), years.end(), offset);
    const auto hi = static_cast<std::size_t>(it - years.begin());
    const auto lo = hi - 1;
    const double span = static_cast<double>(years[hi] - years[lo]);
    const double w = (offset - static_cast<double>(years[lo])) / span;
    return fraction[lo] + w * (fraction[hi] - fraction[lo]);
}

AdoptionProjection adoption_quantiles(const AdoptionCurveSet& curves, double q) {
    if (curves.empty()) {
        throw EmptySetError("adoption quantiles need at least one technology");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("quantile must lie in [0,1]");
    }
    // gather every listed offset, then take the quantile over the
    // technologies that have data there
    std::map<int, std::vector<double>> by_offset;
    for (const auto& curve : curves.curves()) {
        for (const auto& pt : curve.points) {
            by_offset[pt.years_since_introduction].push_back(pt.adoption_fraction);
        }
    }
    AdoptionProjection projection;
    projection.years.reserve(by_offset.size());
    projection.fraction.reserve(by_offset.size());
    for (auto& [offset, values] : by_offset) {
        projection.years.push_back(offset);
        projection.fraction.push_back(interpolated_quantile(values, q));
    }
    projection.quantile_label =
        curves.size() == 1 ? curves.curves().front().technology : quantile_name(q);
    return projection;
}

// --- logistic model ---

void validate(const LogisticParams& params) {
    if (!(params.initial_value > 0.0) || !(params.carrying_capacity > params.initial_value)) {
        throw DomainError("logistic model needs carrying_capacity > initial_value > 0");
    }
    if (!(params.growth_rate > 0.0) || !std::isfinite(params.growth_rate)) {
        throw DomainError("logistic growth_rate must be > 0");
    }
}

double logistic_value(double t_years, const LogisticParams& params) {
    // evaluated as P0 * (K / D) so that D == K at t = 0 returns P0 exactly
    const double decay = std::exp(-params.growth_rate * t_years);
    const double denom =
        params.initial_value + (params.carrying_capacity - params.initial_value) * decay;
    return params.initial_value * (params.carrying_capacity / denom);
}

double logistic_inverse(double value, const LogisticParams& params) {
    if (!(value > 0.0) || !(value < params.carrying_capacity)) {
        throw DomainError("logistic inverse defined for values in (0, carrying_capacity)");
    }
    const double K = params.carrying_capacity;
    const double P0 = params.initial_value;
    return std::log(value * (K - P0) / (P0 * (K - value))) / params.growth_rate;
}

LogisticParams reanchored(const LogisticParams& params, int new_origin_year) {
    LogisticParams shifted = params;
    shifted.initial_value =
        logistic_value(static_cast<double>(new_origin_year - params.origin_year), params);
    shifted.origin_year = new_origin_year;
    return shifted;
}

// --- logistic fitting ---

namespace {

struct LogObjective {
    const std::vector<double>& t;
    const std::vector<double>& log_obs;
    double K;

    double log_model(double p0, double r, double ti) const {
        const double denom = p0 + (K - p0) * std::exp(-r * ti);
        return std::log(p0) + std::log(K) - std::log(denom);
    }

    double value(double p0, double r) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double e = log_model(p0, r, t[i]) - log_obs[i];
            sum += e * e;
        }
        return sum;
    }
};

}  // namespace

LogisticFit fit_logistic(const TransactionSeries& series, double carrying_capacity) {
    if (series.size() < 3) {
        throw InsufficientDataError("logistic fit needs at least 3 observations, got " +
                                    std::to_string(series.size()));
    }
    double max_obs = 0.0;
    for (const auto& row : series.rows()) {
        if (!(row.transactions > 0.0)) {
            throw DomainError("logistic fit needs strictly positive transaction counts");
        }
        max_obs = std::max(max_obs, row.transactions);
    }
    if (!(carrying_capacity > max_obs)) {
        throw DomainError("carrying capacity must exceed the largest observation");
    }

    const int origin_year = series.rows().front().year;
    std::vector<double> t, log_obs;
    t.reserve(series.size());
    log_obs.reserve(series.size());
    for (const auto& row : series.rows()) {
        t.push_back(static_cast<double>(row.year - origin_year));
        log_obs.push_back(std::log(row.transactions));
    }
    const LogObjective obj{t, log_obs, carrying_capacity};

    // deterministic coarse grid seeds the local refinement
    constexpr int kGrid = 40;
    double best_p0 = 1.0, best_r = 0.01, best_f = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double r = 0.01 * std::pow(100.0, static_cast<double>(i) / (kGrid - 1));
        for (int j = 0; j < kGrid; ++j) {
            const double p0 = std::pow(max_obs, static_cast<double>(j) / (kGrid - 1));
            const double f = obj.value(p0, r);
            if (f < best_f) {
                best_f = f;
                best_p0 = p0;
                best_r = r;
            }
        }
    }

    // damped Gauss-Newton on (ln P0, r)
    constexpr double kGrowthFloor = 1e-3;
    constexpr int kMaxIter = 300;
    double ln_p0 = std::log(best_p0);
    double r = best_r;
    double f = best_f;
    double damping = 1e-3;
    int iter = 0;
    bool converged = false;
    const double K = carrying_capacity;
    for (; iter < kMaxIter; ++iter) {
        const double p0 = std::exp(ln_p0);
        // residuals and Jacobian of log P wrt (ln P0, r)
        double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double decay = std::exp(-r * t[i]);
            const double denom = p0 + (K - p0) * decay;
            const double res = std::log(p0) + std::log(K) - std::log(denom) - log_obs[i];
            const double d_lnp0 = 1.0 - p0 * (1.0 - decay) / denom;
            const double d_r = t[i] * (K - p0) * decay / denom;
            jtj00 += d_lnp0 * d_lnp0;
            jtj01 += d_lnp0 * d_r;
            jtj11 += d_r * d_r;
            g0 += d_lnp0 * res;
            g1 += d_r * res;
        }
        bool stepped = false;
        for (int attempt = 0; attempt < 60; ++attempt) {
            const double a00 = jtj00 * (1.0 + damping);
            const double a11 = jtj11 * (1.0 + damping);
            const double det = a00 * a11 - jtj01 * jtj01;
            if (det <= 0.0 || !std::isfinite(det)) {
                damping *= 10.0;
                continue;
            }
            const double step0 = -(a11 * g0 - jtj01 * g1) / det;
            const double step1 = -(a00 * g1 - jtj01 * g0) / det;
            const double next_lnp0 = ln_p0 + step0;
            const double next_r = r + step1;
            if (next_r < kGrowthFloor) {
                throw FitDivergenceError(
                    "growth rate collapsed towards zero; the series carries no growth signal");
            }
            const double next_f = obj.value(std::exp(next_lnp0), next_r);
            if (std::isfinite(next_f) && next_f <= f) {
                const double step_norm = std::abs(step0) + std::abs(step1);
                ln_p0 = next_lnp0;
                r = next_r;
                f = next_f;
                damping = std::max(damping / 3.0, 1e-12);
                stepped = true;
                if (step_norm < 1e-13 || f < 1e-28) {
                    converged = true;
                }
                break;
            }
            damping *= 10.0;
        }
        if (converged || !stepped) {
            // no downhill step left means we already sit at the optimum
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw FitDivergenceError("logistic fit did not converge");
    }
    const double p0 = std::exp(ln_p0);
    if (!(p0 < carrying_capacity)) {
        throw FitDivergenceError("fitted initial value reached the carrying capacity");
    }

    LogisticFit fit;
    fit.params.carrying_capacity = carrying_capacity;
    fit.params.initial_value = p0;
    fit.params.growth_rate = r;
    fit.params.origin_year = origin_year;
    fit.residual = f;
    fit.iterations = iter + 1;
    validate(fit.params);
    return fit;
}

// --- emission trajectories ---

EmissionTrajectory EmissionTrajectory::from_annual(int start_year, std::vector<double> annual_mtco2) {
    EmissionTrajectory traj;
    traj.start_year_ = start_year;
    traj.cumulative_.reserve(annual_mtco2.size());
    double running_gt = 0.0;
    for (double v : annual_mtco2) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw DomainError("annual emissions must be non-negative");
        }
        running_gt += v / 1000.0;
        traj.cumulative_.push_back(running_gt);
    }
    traj.annual_ = std::move(annual_mtco2);
    return traj;
}

EmissionTrajectory project_adoption_emissions(double baseline_annual_mtco2,
                                              double current_fraction,
                                              const AdoptionProjection& adoption,
                                              int horizon_years, int start_year) {
    if (!(current_fraction > 0.0)) {
        throw ZeroCurrentFractionError("current adoption fraction must be > 0");
    }
    if (current_fraction > 1.0) {
        throw DomainError("current adoption fraction must be <= 1");
    }
    if (baseline_annual_mtco2 < 0.0 || !std::isfinite(baseline_annual_mtco2)) {
        throw DomainError("baseline annual emissions must be non-negative");
    }
    if (horizon_years < 1) {
        throw DomainError("projection horizon must be at least 1 year");
    }
    const double full_adoption_annual = baseline_annual_mtco2 / current_fraction;
    std::vector<double> annual(static_cast<std::size_t>(horizon_years));
    for (int i = 0; i < horizon_years; ++i) {
        annual[static_cast<std::size_t>(i)] =
            full_adoption_annual * adoption.fraction_at(static_cast<double>(i));
    }
    return EmissionTrajectory::from_annual(start_year, std::move(annual));
}

EmissionTrajectory project_logistic_emissions(double baseline_annual_mtco2,
                                              double baseline_transactions,
                                              const LogisticParams& params, int horizon_years,
                                              int start_year) {
    validate(params);
    if (!(baseline_transactions > 0.0)) {
        throw ZeroBaselineTxError("baseline transaction volume must be > 0");
    }
    if (baseline_annual_mtco2 < 0.0 || !std::isfinite(baseline_annual_mtco2)) {
        throw DomainError("baseline annual emissions must be non-negative");
    }
    if (horizon_years < 1) {
        throw DomainError("projection horizon must be at least 1 year");
    }
    std::vector<double> annual(static_cast<std::size_t>(horizon_years));
    for (int i = 0; i < horizon_years; ++i) {
        annual[static_cast<std::size_t>(i)] = baseline_annual_mtco2 *
                                              logistic_value(static_cast<double>(i), params) /
                                              baseline_transactions;
    }
    return EmissionTrajectory::from_annual(start_year, std::move(annual));
}

// --- temperature response ---

void validate(const ClimateParams& params) {
    if (!(params.lambda_low_c_per_gtco2 > 0.0) ||
        !(params.lambda_low_c_per_gtco2 <= params.lambda_mean_c_per_gtco2) ||
        !(params.lambda_mean_c_per_gtco2 <= params.lambda_high_c_per_gtco2)) {
        throw DomainError("climate coefficients must satisfy 0 < low <= mean <= high");
    }
}

TemperatureBands temperature_rise(const EmissionTrajectory& trajectory,
                                  const ClimateParams& climate) {
    validate(climate);
    TemperatureBands bands;
    const auto& cumulative = trajectory.cumulative_gtco2();
    bands.low_c.reserve(cumulative.size());
    bands.mean_c.reserve(cumulative.size());
    bands.high_c.reserve(cumulative.size());
    for (double gt : cumulative) {
        bands.low_c.push_back(climate.lambda_low_c_per_gtco2 * gt);
        bands.mean_c.push_back(climate.lambda_mean_c_per_gtco2 * gt);
        bands.high_c.push_back(climate.lambda_high_c_per_gtco2 * gt);
    }
    return bands;
}

std::optional<ThresholdCrossing> crossing_year(std::span<const double> delta_t_c, int start_year,
                                               double threshold_c) {
    for (std::size_t i = 0; i < delta_t_c.size(); ++i) {
        if (delta_t_c[i] >= threshold_c) {
            ThresholdCrossing crossing;
            crossing.year = start_year + static_cast<int>(i);
            if (i == 0) {
                crossing.fractional_year = static_cast<double>(start_year);
            } else {
                const double prev = delta_t_c[i - 1];
                const double step = delta_t_c[i] - prev;
                const double w = step > 0.0 ? (threshold_c - prev) / step : 1.0;
                crossing.fractional_year =
                    static_cast<double>(start_year) + static_cast<double>(i - 1) + w;
            }
            return crossing;
        }
    }
    return std::nullopt;
}

}  // namespace chainfp
