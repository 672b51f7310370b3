#pragma once

#include <filesystem>
#include <optional>

#include "chainfp/pos_footprint.hpp"
#include "chainfp/pow_footprint.hpp"
#include "chainfp/projection.hpp"

namespace chainfp {

/// Dataset files referenced by a scenario, resolved relative to the
/// scenario file's directory. Every referenced path is checked for
/// existence when the scenario loads.
struct DatasetPaths {
    std::optional<std::filesystem::path> country_profiles;
    std::optional<std::filesystem::path> network_series;
    std::optional<std::filesystem::path> hardware;
    std::optional<std::filesystem::path> adoption;
    std::optional<std::filesystem::path> transactions;
};

struct PosScenarioConfig {
    PosScenario base;             // hardware member unused; see the pair below
    HardwareSpec lower_hardware;
    HardwareSpec upper_hardware;
};

struct AdoptionProjectionConfig {
    double quantile = 0.5;
    double baseline_annual_mtco2 = 0.0;
    double current_fraction = 1.0;
};

struct LogisticProjectionConfig {
    LogisticParams params;
    double baseline_annual_mtco2 = 0.0;
    std::optional<double> baseline_transactions;  // defaults to the model value at start
};

struct ProjectionScenarioConfig {
    int start_year = 2020;
    int horizon_years = 100;
    std::optional<AdoptionProjectionConfig> adoption;
    std::optional<LogisticProjectionConfig> logistic;
};

/// Parsed scenario file: JSON with sections `datasets`, `pow`, `pos`,
/// `projection`, `climate`. Unknown keys are rejected. Paper-era model
/// constants are baked in as defaults, so a minimal scenario can omit most
/// of the `pos`, `climate` and logistic keys.
class Scenario {
public:
    static Scenario load(const std::filesystem::path& file);

    const DatasetPaths& datasets() const { return datasets_; }
    bool has_pow() const { return pow_.has_value(); }
    /// ConfigError when the section is missing.
    const AnnualSeriesInputs& pow_inputs() const;
    bool has_pos() const { return pos_.has_value(); }
    const PosScenarioConfig& pos() const;
    const ProjectionScenarioConfig& projection() const { return projection_; }
    const ClimateParams& climate() const { return climate_; }
    double threshold_c() const { return threshold_c_; }

private:
    Scenario() = default;
    DatasetPaths datasets_;
    std::optional<AnnualSeriesInputs> pow_;
    std::optional<PosScenarioConfig> pos_;
    ProjectionScenarioConfig projection_;
    ClimateParams climate_;
    double threshold_c_ = 1.5;
};

}  // namespace chainfp
