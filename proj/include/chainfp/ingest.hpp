#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "chainfp/units.hpp"

namespace chainfp {

/// One country's share of the node population together with its local
/// prices and grid intensity.
struct CountryProfile {
    std::string country_code;  // ISO-3166 alpha-2
    double node_share = 0.0;   // fraction of all nodes, in [0,1]
    MoneyRate electricity_price{0.0, MoneyUnit::UsdPerKwh};
    MoneyRate internet_price{0.0, MoneyUnit::UsdPerMonth};
    EmissionFactor emission_factor{0.0};
};

/// Per-country node shares, prices and emission factors. Shares always sum
/// to 1 (the factory renormalizes raw shares that are within 1% of 1).
class CountryProfileTable {
public:
    static CountryProfileTable from_rows(std::vector<CountryProfile> rows);

    const std::vector<CountryProfile>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::size_t size() const { return rows_.size(); }

private:
    CountryProfileTable() = default;
    std::vector<CountryProfile> rows_;
};

/// One day of network observables: hash rate, issued rewards and market
/// price. Rewards are daily totals in native tokens.
struct NetworkDay {
    std::chrono::year_month_day date{};
    double hash_rate_ghs = 0.0;
    double block_reward = 0.0;
    double tx_fees = 0.0;
    double uncle_reward = 0.0;
    double uncle_incl_reward = 0.0;
    double market_price_usd = 0.0;
};

/// Strictly date-ordered day records with non-negative values.
class NetworkDaySeries {
public:
    static NetworkDaySeries from_rows(std::vector<NetworkDay> rows);

    const std::vector<NetworkDay>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::size_t size() const { return rows_.size(); }

private:
    NetworkDaySeries() = default;
    std::vector<NetworkDay> rows_;
};

/// Uniquely named hardware options.
class HardwareCatalog {
public:
    static HardwareCatalog from_rows(std::vector<HardwareSpec> rows);

    const std::vector<HardwareSpec>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

private:
    HardwareCatalog() = default;
    std::vector<HardwareSpec> rows_;
};

struct AdoptionPoint {
    int years_since_introduction = 0;
    double adoption_fraction = 0.0;  // in [0,1]; dips are allowed
};

struct AdoptionCurve {
    std::string technology;
    std::vector<AdoptionPoint> points;  // years strictly increasing
};

/// Historical adoption trajectories, one curve per technology.
class AdoptionCurveSet {
public:
    static AdoptionCurveSet from_curves(std::vector<AdoptionCurve> curves);

    const std::vector<AdoptionCurve>& curves() const { return curves_; }
    bool empty() const { return curves_.empty(); }
    std::size_t size() const { return curves_.size(); }

    /// Subset containing a single named technology; EmptySetError if absent.
    AdoptionCurveSet only(const std::string& technology) const;

private:
    AdoptionCurveSet() = default;
    std::vector<AdoptionCurve> curves_;
};

struct TransactionYear {
    int year = 0;
    double transactions = 0.0;  // non-negative count
};

/// Annual transaction counts with strictly increasing years.
class TransactionSeries {
public:
    static TransactionSeries from_rows(std::vector<TransactionYear> rows);

    const std::vector<TransactionYear>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::size_t size() const { return rows_.size(); }

private:
    TransactionSeries() = default;
    std::vector<TransactionYear> rows_;
};

// --- loaders ---
//
// All loaders are pure given the file contents. Column inventories are
// documented in the bundled data files; every violated invariant raises the
// specific error type, never a generic failure.

CountryProfileTable load_country_profiles(const std::filesystem::path& path);
NetworkDaySeries load_network_series(const std::filesystem::path& path);
HardwareCatalog load_hardware_catalog(const std::filesystem::path& path);
AdoptionCurveSet load_adoption_curves(const std::filesystem::path& path);
TransactionSeries load_transaction_series(const std::filesystem::path& path);

// --- writers (inverse of the loaders on the parsed representation) ---

void save_country_profiles(const CountryProfileTable& table, const std::filesystem::path& path);
void save_network_series(const NetworkDaySeries& series, const std::filesystem::path& path);
void save_hardware_catalog(const HardwareCatalog& catalog, const std::filesystem::path& path);
void save_adoption_curves(const AdoptionCurveSet& curves, const std::filesystem::path& path);
void save_transaction_series(const TransactionSeries& series, const std::filesystem::path& path);

/// Parses "YYYY-MM-DD"; SchemaError on malformed or impossible dates.
std::chrono::year_month_day parse_date(const std::string& text, const std::string& context);
std::string format_date(const std::chrono::year_month_day& date);

}  // namespace chainfp
