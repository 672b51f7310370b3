#pragma once

#include "chainfp/ingest.hpp"
#include "chainfp/units.hpp"

namespace chainfp {

/// Node-share-weighted network averages. Each value lies in the convex hull
/// of the per-country inputs.
struct WeightedFactors {
    MoneyRate electricity_price{0.0, MoneyUnit::UsdPerKwh};
    MoneyRate internet_price{0.0, MoneyUnit::UsdPerMonth};
    EmissionFactor emission_factor{0.0};
};

/// Share-weighted average of electricity price, internet price and emission
/// factor over a country profile table. Throws EmptyTableError on an empty
/// table.
WeightedFactors weighted_factors(const CountryProfileTable& table);

}  // namespace chainfp
