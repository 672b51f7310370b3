#include "chainfp/pow_footprint.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "chainfp/errors.hpp"

namespace chainfp {

EnergyQuantity lower_limit_daily_energy(double hash_rate_ghs, double efficiency_j_per_mh) {
    if (!(efficiency_j_per_mh > 0.0) || !std::isfinite(efficiency_j_per_mh)) {
        throw NonPositiveEfficiencyError("mining efficiency must be > 0 J/MH");
    }
    if (hash_rate_ghs < 0.0 || !std::isfinite(hash_rate_ghs)) {
        throw DomainError("hash rate must be non-negative");
    }
    // GH/s x J/MH = kW; x 24 h = kWh/day; x 1e-3 = MWh/day
    return {hash_rate_ghs * efficiency_j_per_mh * 1e-3 * 24.0, EnergyUnit::MWh};
}

EnergyQuantity upper_limit_daily_energy(const DailyRewards& rewards, const MoneyRate& market_price,
                                        const MoneyRate& electricity_price) {
    const double price = electricity_price.value_as(MoneyUnit::UsdPerKwh);
    if (!(price > 0.0)) {
        throw ZeroElectricityPriceError("electricity price must be > 0 USD/kWh");
    }
    for (double v : {rewards.block, rewards.tx_fees, rewards.uncle, rewards.uncle_incl}) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw DomainError("rewards must be non-negative");
        }
    }
    const double revenue_usd = rewards.total() * market_price.value_as(MoneyUnit::UsdPerToken);
    return {revenue_usd / price / 1000.0, EnergyUnit::MWh};
}

double best_efficiency_by_year(const HardwareCatalog& catalog, int year) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& hw : catalog.rows()) {
        if (hw.release_year <= year && hw.efficiency_j_per_mh) {
            best = std::min(best, *hw.efficiency_j_per_mh);
        }
    }
    if (!std::isfinite(best)) {
        throw NoHardwareAvailableError("no mining hardware released in or before " +
                                       std::to_string(year));
    }
    return best;
}

CarbonQuantity carbon_from_energy(const EnergyQuantity& energy, const EmissionFactor& factor,
                                  CarbonUnit unit) {
    const double kg = energy.value_in(EnergyUnit::kWh) * factor.kg_per_kwh();
    return CarbonQuantity(kg, CarbonUnit::kgCO2).to(unit);
}

namespace {

template <typename T>
const T& inputs_for_year(const std::map<int, T>& map, int year, const char* what) {
    const auto it = map.find(year);
    if (it == map.end()) {
        throw MissingFactorError(std::string("no ") + what + " configured for year " +
                                 std::to_string(year));
    }
    return it->second;
}

}  // namespace

std::vector<AnnualFootprint> annual_series(const NetworkDaySeries& series,
                                           const HardwareCatalog& catalog,
                                           const AnnualSeriesInputs& inputs,
                                           std::vector<std::string>* warnings) {
    struct YearSums {
        double lower_mwh = 0.0;
        double upper_mwh = 0.0;
    };
    std::map<int, YearSums> sums;
    std::map<int, double> efficiency;  // resolved once per year

    for (const auto& day : series.rows()) {
        const int year = static_cast<int>(day.date.year());
        auto [it, inserted] = efficiency.try_emplace(year, 0.0);
        if (inserted) {
            it->second = best_efficiency_by_year(catalog, year);
        }
        const auto& price = inputs_for_year(inputs.electricity_price_by_year, year,
                                            "electricity price");
        auto& acc = sums[year];
        acc.lower_mwh +=
            lower_limit_daily_energy(day.hash_rate_ghs, it->second).value_in(EnergyUnit::MWh);
        acc.upper_mwh += upper_limit_daily_energy(
                             {day.block_reward, day.tx_fees, day.uncle_reward, day.uncle_incl_reward},
                             MoneyRate(day.market_price_usd, MoneyUnit::UsdPerToken), price)
                             .value_in(EnergyUnit::MWh);
    }

    std::vector<AnnualFootprint> result;
    result.reserve(sums.size() * 2);
    for (const auto& [year, acc] : sums) {
        const auto& f_lower =
            inputs_for_year(inputs.emission_factor_lower_by_year, year, "lower emission factor");
        const auto& f_upper =
            inputs_for_year(inputs.emission_factor_upper_by_year, year, "upper emission factor");
        const EnergyQuantity lower{acc.lower_mwh, EnergyUnit::MWh};
        const EnergyQuantity upper{acc.upper_mwh, EnergyUnit::MWh};
        result.push_back({year, lower.to(EnergyUnit::TWh),
                          carbon_from_energy(lower, f_lower), Bound::Lower});
        result.push_back({year, upper.to(EnergyUnit::TWh),
                          carbon_from_energy(upper, f_upper), Bound::Upper});
        if (warnings && acc.lower_mwh > acc.upper_mwh) {
            warnings->push_back("year " + std::to_string(year) +
                                ": hardware-floor estimate exceeds break-even estimate");
        }
    }
    return result;
}

std::vector<AnnualFootprint> annual_series_parallel(const NetworkDaySeries& series,
                                                    const HardwareCatalog& catalog,
                                                    const AnnualSeriesInputs& inputs, int jobs,
                                                    std::vector<std::string>* warnings) {
    if (jobs < 1) {
        throw DomainError("jobs must be >= 1");
    }
    if (jobs == 1) {
        return annual_series(series, catalog, inputs, warnings);
    }

    // split rows into per-year sub-series, preserving row order
    std::vector<std::vector<NetworkDay>> year_rows;
    for (const auto& day : series.rows()) {
        if (year_rows.empty() ||
            static_cast<int>(year_rows.back().front().date.year()) !=
                static_cast<int>(day.date.year())) {
            year_rows.emplace_back();
        }
        year_rows.back().push_back(day);
    }

    struct YearResult {
        std::vector<AnnualFootprint> entries;
        std::vector<std::string> warnings;
        std::exception_ptr error;
    };
    std::vector<YearResult> results(year_rows.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < year_rows.size(); i = next.fetch_add(1)) {
            try {
                auto sub = NetworkDaySeries::from_rows(year_rows[i]);
                results[i].entries = annual_series(sub, catalog, inputs, &results[i].warnings);
            } catch (...) {
                results[i].error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), year_rows.size());
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::vector<AnnualFootprint> merged;
    for (auto& r : results) {
        if (r.error) std::rethrow_exception(r.error);
        merged.insert(merged.end(), r.entries.begin(), r.entries.end());
        if (warnings) {
            warnings->insert(warnings->end(), r.warnings.begin(), r.warnings.end());
        }
    }
    return merged;
}

std::vector<PowDayEstimate> daily_series(const NetworkDaySeries& series,
                                         const HardwareCatalog& catalog,
                                         const AnnualSeriesInputs& inputs) {
    std::vector<PowDayEstimate> result;
    result.reserve(series.size());
    std::map<int, double> efficiency;
    for (const auto& day : series.rows()) {
        const int year = static_cast<int>(day.date.year());
        auto [it, inserted] = efficiency.try_emplace(year, 0.0);
        if (inserted) {
            it->second = best_efficiency_by_year(catalog, year);
        }
        const auto& price =
            inputs_for_year(inputs.electricity_price_by_year, year, "electricity price");
        const auto& f_lower =
            inputs_for_year(inputs.emission_factor_lower_by_year, year, "lower emission factor");
        const auto& f_upper =
            inputs_for_year(inputs.emission_factor_upper_by_year, year, "upper emission factor");
        const auto lower = lower_limit_daily_energy(day.hash_rate_ghs, it->second);
        const auto upper = upper_limit_daily_energy(
            {day.block_reward, day.tx_fees, day.uncle_reward, day.uncle_incl_reward},
            MoneyRate(day.market_price_usd, MoneyUnit::UsdPerToken), price);
        result.push_back({day.date, lower, upper,
                          carbon_from_energy(lower, f_lower, CarbonUnit::tCO2),
                          carbon_from_energy(upper, f_upper, CarbonUnit::tCO2)});
    }
    return result;
}

}  // namespace chainfp
