#include "chainfp/weighting.hpp"

#include "chainfp/errors.hpp"

namespace chainfp {

WeightedFactors weighted_factors(const CountryProfileTable& table) {
    if (table.empty()) {
        throw EmptyTableError("cannot weight an empty country profile table");
    }
    double electricity = 0.0;
    double internet = 0.0;
    double factor = 0.0;
    for (const auto& row : table.rows()) {
        electricity += row.node_share * row.electricity_price.value_as(MoneyUnit::UsdPerKwh);
        internet += row.node_share * row.internet_price.value_as(MoneyUnit::UsdPerMonth);
        factor += row.node_share * row.emission_factor.kg_per_kwh();
    }
    return {MoneyRate(electricity, MoneyUnit::UsdPerKwh),
            MoneyRate(internet, MoneyUnit::UsdPerMonth), EmissionFactor(factor)};
}

}  // namespace chainfp
