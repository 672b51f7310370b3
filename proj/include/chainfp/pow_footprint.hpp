#pragma once

#include <map>
#include <string>
#include <vector>

#include "chainfp/ingest.hpp"
#include "chainfp/units.hpp"

namespace chainfp {

enum class Bound { Lower, Upper };

inline const char* to_string(Bound b) { return b == Bound::Lower ? "lower" : "upper"; }

/// Daily energy/carbon estimate pair. Lower and upper are independent
/// estimators; with degenerate inputs (tiny rewards, huge hash rate) the
/// lower can exceed the upper, so no ordering is asserted between them.
struct PowDayEstimate {
    std::chrono::year_month_day date{};
    EnergyQuantity lower_energy{0.0, EnergyUnit::MWh};
    EnergyQuantity upper_energy{0.0, EnergyUnit::MWh};
    CarbonQuantity lower_carbon{0.0, CarbonUnit::tCO2};
    CarbonQuantity upper_carbon{0.0, CarbonUnit::tCO2};
};

struct AnnualFootprint {
    int year = 0;
    EnergyQuantity energy{0.0, EnergyUnit::TWh};
    CarbonQuantity carbon{0.0, CarbonUnit::MtCO2};
    Bound bound = Bound::Lower;
};

struct DailyRewards {
    double block = 0.0;
    double tx_fees = 0.0;
    double uncle = 0.0;
    double uncle_incl = 0.0;

    double total() const { return block + tx_fees + uncle + uncle_incl; }
};

/// Hardware-floor estimate: the whole network runs the most efficient
/// hardware. hash_rate in GH/s, efficiency in J/MH, result in MWh/day.
EnergyQuantity lower_limit_daily_energy(double hash_rate_ghs, double efficiency_j_per_mh);

/// Break-even estimate: miners spend all revenue on electricity. Rewards are
/// daily token totals; result in MWh/day.
EnergyQuantity upper_limit_daily_energy(const DailyRewards& rewards, const MoneyRate& market_price,
                                        const MoneyRate& electricity_price);

/// Minimum efficiency (J/MH) over catalog entries released in or before
/// `year`. Throws NoHardwareAvailableError when no such entry exists.
double best_efficiency_by_year(const HardwareCatalog& catalog, int year);

/// carbon = energy [kWh] x factor [kg/kWh], expressed in `unit`.
CarbonQuantity carbon_from_energy(const EnergyQuantity& energy, const EmissionFactor& factor,
                                  CarbonUnit unit = CarbonUnit::MtCO2);

/// Per-year inputs for the annual aggregation. Lower and upper bounds may
/// use different emission-factor weightings (mining-power geography is not
/// necessarily full-node geography).
struct AnnualSeriesInputs {
    std::map<int, MoneyRate> electricity_price_by_year;
    std::map<int, EmissionFactor> emission_factor_lower_by_year;
    std::map<int, EmissionFactor> emission_factor_upper_by_year;
};

/// Sums the daily estimators over calendar years. Output carries two
/// entries per year (lower, upper), energies in TWh, carbon in MtCO2.
/// Appends a note to `warnings` (if given) for any year whose lower bound
/// exceeds its upper bound.
std::vector<AnnualFootprint> annual_series(const NetworkDaySeries& series,
                                           const HardwareCatalog& catalog,
                                           const AnnualSeriesInputs& inputs,
                                           std::vector<std::string>* warnings = nullptr);

/// Day-resolution view of the two estimators with per-year best efficiency.
std::vector<PowDayEstimate> daily_series(const NetworkDaySeries& series,
                                         const HardwareCatalog& catalog,
                                         const AnnualSeriesInputs& inputs);

/// Same result as annual_series, with years evaluated concurrently on up to
/// `jobs` threads. Per-year sums are independent, so the output is
/// bit-identical to the serial evaluation.
std::vector<AnnualFootprint> annual_series_parallel(const NetworkDaySeries& series,
                                                    const HardwareCatalog& catalog,
                                                    const AnnualSeriesInputs& inputs, int jobs,
                                                    std::vector<std::string>* warnings = nullptr);

}  // namespace chainfp
