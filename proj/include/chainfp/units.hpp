#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "chainfp/errors.hpp"

namespace chainfp {

enum class EnergyUnit { Wh, kWh, MWh, TWh };
enum class CarbonUnit { kgCO2, tCO2, MtCO2, GtCO2 };

namespace detail {

// Decimal exponents relative to the base unit (Wh / kgCO2).
inline constexpr std::array<int, 4> kEnergyExp{0, 3, 6, 12};
inline constexpr std::array<int, 4> kCarbonExp{0, 3, 9, 12};

// 10^k for k in [0, 12]; all exactly representable in double.
inline double pow10i(int k) {
    static constexpr std::array<double, 13> table{
        1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12};
    return table[static_cast<std::size_t>(k)];
}

// Single multiply or divide by an exact power of ten keeps round trips
// within 1 ulp.
inline double rescale(double value, int from_exp, int to_exp) {
    const int k = from_exp - to_exp;
    return k >= 0 ? value * pow10i(k) : value / pow10i(-k);
}

inline void require_non_negative(double value, const char* what) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be a finite non-negative number");
    }
}

}  // namespace detail

inline const char* to_string(EnergyUnit u) {
    switch (u) {
        case EnergyUnit::Wh: return "Wh";
        case EnergyUnit::kWh: return "kWh";
        case EnergyUnit::MWh: return "MWh";
        case EnergyUnit::TWh: return "TWh";
    }
    return "?";
}

inline const char* to_string(CarbonUnit u) {
    switch (u) {
        case CarbonUnit::kgCO2: return "kgCO2";
        case CarbonUnit::tCO2: return "tCO2";
        case CarbonUnit::MtCO2: return "MtCO2";
        case CarbonUnit::GtCO2: return "GtCO2";
    }
    return "?";
}

/// Non-negative amount of electrical energy carried with its unit.
class EnergyQuantity {
public:
    EnergyQuantity(double value, EnergyUnit unit) : value_(value), unit_(unit) {
        detail::require_non_negative(value, "energy value");
    }

    double value() const { return value_; }
    EnergyUnit unit() const { return unit_; }

    double value_in(EnergyUnit target) const {
        return detail::rescale(value_,
                               detail::kEnergyExp[static_cast<std::size_t>(unit_)],
                               detail::kEnergyExp[static_cast<std::size_t>(target)]);
    }

    EnergyQuantity to(EnergyUnit target) const { return {value_in(target), target}; }

private:
    double value_;
    EnergyUnit unit_;
};

/// Non-negative mass of CO2-equivalent carried with its unit.
class CarbonQuantity {
public:
    CarbonQuantity(double value, CarbonUnit unit) : value_(value), unit_(unit) {
        detail::require_non_negative(value, "carbon value");
    }

    double value() const { return value_; }
    CarbonUnit unit() const { return unit_; }

    double value_in(CarbonUnit target) const {
        return detail::rescale(value_,
                               detail::kCarbonExp[static_cast<std::size_t>(unit_)],
                               detail::kCarbonExp[static_cast<std::size_t>(target)]);
    }

    CarbonQuantity to(CarbonUnit target) const { return {value_in(target), target}; }

private:
    double value_;
    CarbonUnit unit_;
};

inline EnergyQuantity convert_energy(const EnergyQuantity& q, EnergyUnit target) {
    return q.to(target);
}

inline CarbonQuantity convert_carbon(const CarbonQuantity& q, CarbonUnit target) {
    return q.to(target);
}

/// Grid emission intensity in kgCO2eq per kWh. Bounded by 2.0: even the
/// dirtiest coal grids stay below 1.2.
class EmissionFactor {
public:
    explicit EmissionFactor(double kg_per_kwh) : kg_per_kwh_(kg_per_kwh) {
        detail::require_non_negative(kg_per_kwh, "emission factor");
        if (kg_per_kwh > 2.0) {
            throw DomainError("emission factor " + std::to_string(kg_per_kwh) +
                              " kgCO2/kWh exceeds the 2.0 sanity bound");
        }
    }

    double kg_per_kwh() const { return kg_per_kwh_; }

private:
    double kg_per_kwh_;
};

enum class MoneyUnit { UsdPerKwh, UsdPerMonth, Usd, UsdPerToken };

inline const char* to_string(MoneyUnit u) {
    switch (u) {
        case MoneyUnit::UsdPerKwh: return "USD/kWh";
        case MoneyUnit::UsdPerMonth: return "USD/month";
        case MoneyUnit::Usd: return "USD";
        case MoneyUnit::UsdPerToken: return "USD/token";
    }
    return "?";
}

/// Non-negative USD amount or rate carried with its unit. Call sites that
/// need a particular denomination assert it via value_as().
class MoneyRate {
public:
    MoneyRate(double value, MoneyUnit unit) : value_(value), unit_(unit) {
        detail::require_non_negative(value, "money value");
    }

    double value() const { return value_; }
    MoneyUnit unit() const { return unit_; }

    double value_as(MoneyUnit expected) const {
        if (unit_ != expected) {
            throw DomainError(std::string("money rate is in ") + to_string(unit_) +
                              ", expected " + to_string(expected));
        }
        return value_;
    }

private:
    double value_;
    MoneyUnit unit_;
};

/// One node/miner hardware option. efficiency_j_per_mh is only present for
/// mining hardware.
struct HardwareSpec {
    std::string name;
    double power_w = 0.0;
    double price_usd = 0.0;
    std::optional<double> efficiency_j_per_mh;
    int release_year = 0;
};

inline void validate(const HardwareSpec& hw) {
    if (hw.name.empty()) {
        throw DomainError("hardware spec needs a name");
    }
    if (!(hw.power_w > 0.0) || !std::isfinite(hw.power_w)) {
        throw DomainError("hardware '" + hw.name + "': power_w must be > 0");
    }
    if (!(hw.price_usd > 0.0) || !std::isfinite(hw.price_usd)) {
        throw DomainError("hardware '" + hw.name + "': price_usd must be > 0");
    }
    if (hw.efficiency_j_per_mh && !(*hw.efficiency_j_per_mh > 0.0)) {
        throw DomainError("hardware '" + hw.name + "': efficiency_j_per_mh must be > 0");
    }
}

}  // namespace chainfp
