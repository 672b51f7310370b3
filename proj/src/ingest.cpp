#include "chainfp/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "chainfp/csv.hpp"
#include "chainfp/errors.hpp"

namespace chainfp {

namespace {

std::string cell_context(const std::filesystem::path& path, std::size_t row, const std::string& col) {
    return path.string() + " row " + std::to_string(row + 2) + " column '" + col + "'";
}

int require_column(const csv::Table& table, const std::string& name,
                   const std::filesystem::path& path) {
    const int idx = table.column(name);
    if (idx < 0) {
        throw SchemaError(path.string() + ": missing required column '" + name + "'");
    }
    return idx;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::chrono::year_month_day parse_date(const std::string& text, const std::string& context) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        std::from_chars(text.data(), text.data() + 4, y).ec != std::errc{} ||
        std::from_chars(text.data() + 5, text.data() + 7, m).ec != std::errc{} ||
        std::from_chars(text.data() + 8, text.data() + 10, d).ec != std::errc{}) {
        throw SchemaError(context + ": not an ISO date: '" + text + "'");
    }
    const std::chrono::year_month_day date{std::chrono::year{y}, std::chrono::month{m},
                                           std::chrono::day{d}};
    if (!date.ok()) {
        throw SchemaError(context + ": impossible calendar date: '" + text + "'");
    }
    return date;
}

std::string format_date(const std::chrono::year_month_day& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

// --- CountryProfileTable ---

CountryProfileTable CountryProfileTable::from_rows(std::vector<CountryProfile> rows) {
    std::set<std::string> seen;
    double raw_sum = 0.0;
    for (const auto& row : rows) {
        if (row.country_code.size() != 2 ||
            !std::isalpha(static_cast<unsigned char>(row.country_code[0])) ||
            !std::isalpha(static_cast<unsigned char>(row.country_code[1]))) {
            throw SchemaError("country code must be two letters: '" + row.country_code + "'");
        }
        if (!seen.insert(row.country_code).second) {
            throw DuplicateCountryError("duplicate country code: " + row.country_code);
        }
        if (row.node_share < 0.0 || !std::isfinite(row.node_share)) {
            throw SchemaError("node share for " + row.country_code + " must be non-negative");
        }
        raw_sum += row.node_share;
    }
    if (!rows.empty()) {
        if (std::abs(raw_sum - 1.0) > 0.01) {
            throw ShareSumError("node shares sum to " + format_double(raw_sum) +
                                ", more than 1% away from 1");
        }
        for (auto& row : rows) row.node_share /= raw_sum;
    }
    CountryProfileTable table;
    table.rows_ = std::move(rows);
    return table;
}

CountryProfileTable load_country_profiles(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const int c_code = require_column(table, "country_code", path);
    const int c_share = table.column("node_share");
    const int c_count = table.column("node_count");
    if (c_share < 0 && c_count < 0) {
        throw SchemaError(path.string() + ": needs a 'node_share' or 'node_count' column");
    }
    const int c_ele = require_column(table, "electricity_price_usd_per_kwh", path);
    const int c_int = require_column(table, "internet_price_usd_per_month", path);
    const int c_ef = require_column(table, "emission_factor_kgco2_per_kwh", path);

    std::vector<CountryProfile> rows;
    rows.reserve(table.rows.size());
    double count_sum = 0.0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        CountryProfile p;
        p.country_code = r[static_cast<std::size_t>(c_code)];
        try {
            if (c_share >= 0) {
                p.node_share =
                    csv::to_double(r[static_cast<std::size_t>(c_share)], cell_context(path, i, "node_share"));
            } else {
                p.node_share =
                    csv::to_double(r[static_cast<std::size_t>(c_count)], cell_context(path, i, "node_count"));
                count_sum += p.node_share;
            }
            p.electricity_price =
                MoneyRate(csv::to_double(r[static_cast<std::size_t>(c_ele)],
                                         cell_context(path, i, "electricity_price_usd_per_kwh")),
                          MoneyUnit::UsdPerKwh);
            p.internet_price =
                MoneyRate(csv::to_double(r[static_cast<std::size_t>(c_int)],
                                         cell_context(path, i, "internet_price_usd_per_month")),
                          MoneyUnit::UsdPerMonth);
            p.emission_factor = EmissionFactor(csv::to_double(
                r[static_cast<std::size_t>(c_ef)], cell_context(path, i, "emission_factor_kgco2_per_kwh")));
        } catch (const DomainError& e) {
            throw SchemaError(cell_context(path, i, "values") + ": " + e.what());
        }
        rows.push_back(std::move(p));
    }
    // node counts become shares here; from_rows only renormalizes fractions
    if (c_share < 0 && count_sum > 0.0) {
        for (auto& p : rows) p.node_share /= count_sum;
    }
    return CountryProfileTable::from_rows(std::move(rows));
}

void save_country_profiles(const CountryProfileTable& table, const std::filesystem::path& path) {
    csv::Table out;
    out.header = {"country_code", "node_share", "electricity_price_usd_per_kwh",
                  "internet_price_usd_per_month", "emission_factor_kgco2_per_kwh"};
    for (const auto& row : table.rows()) {
        out.rows.push_back({row.country_code, format_double(row.node_share),
                            format_double(row.electricity_price.value()),
                            format_double(row.internet_price.value()),
                            format_double(row.emission_factor.kg_per_kwh())});
    }
    csv::write_file(path, out);
}

// --- NetworkDaySeries ---

NetworkDaySeries NetworkDaySeries::from_rows(std::vector<NetworkDay> rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        for (double v : {r.hash_rate_ghs, r.block_reward, r.tx_fees, r.uncle_reward,
                         r.uncle_incl_reward, r.market_price_usd}) {
            if (v < 0.0 || !std::isfinite(v)) {
                throw NegativeValueError("negative value in network series at " +
                                         format_date(r.date));
            }
        }
        if (i > 0 && std::chrono::sys_days(rows[i - 1].date) >= std::chrono::sys_days(r.date)) {
            throw NonMonotoneDateError("dates not strictly increasing at " + format_date(r.date));
        }
    }
    NetworkDaySeries series;
    series.rows_ = std::move(rows);
    return series;
}

NetworkDaySeries load_network_series(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const int c_date = require_column(table, "date", path);
    const int c_hash = require_column(table, "hash_rate_ghs", path);
    const int c_block = require_column(table, "block_reward", path);
    const int c_tx = require_column(table, "tx_fees", path);
    const int c_price = require_column(table, "market_price_usd", path);
    // chains without uncle blocks simply omit these columns
    const int c_uncle = table.column("uncle_reward");
    const int c_uincl = table.column("uncle_incl_reward");

    std::vector<NetworkDay> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        NetworkDay d;
        d.date = parse_date(r[static_cast<std::size_t>(c_date)], cell_context(path, i, "date"));
        d.hash_rate_ghs =
            csv::to_double(r[static_cast<std::size_t>(c_hash)], cell_context(path, i, "hash_rate_ghs"));
        d.block_reward =
            csv::to_double(r[static_cast<std::size_t>(c_block)], cell_context(path, i, "block_reward"));
        d.tx_fees = csv::to_double(r[static_cast<std::size_t>(c_tx)], cell_context(path, i, "tx_fees"));
        d.uncle_reward = c_uncle < 0 ? 0.0
                                     : csv::to_double(r[static_cast<std::size_t>(c_uncle)],
                                                      cell_context(path, i, "uncle_reward"));
        d.uncle_incl_reward = c_uincl < 0 ? 0.0
                                          : csv::to_double(r[static_cast<std::size_t>(c_uincl)],
                                                           cell_context(path, i, "uncle_incl_reward"));
        d.market_price_usd =
            csv::to_double(r[static_cast<std::size_t>(c_price)], cell_context(path, i, "market_price_usd"));
        rows.push_back(d);
    }
    return NetworkDaySeries::from_rows(std::move(rows));
}

void save_network_series(const NetworkDaySeries& series, const std::filesystem::path& path) {
    csv::Table out;
    out.header = {"date",         "hash_rate_ghs",     "block_reward",    "tx_fees",
                  "uncle_reward", "uncle_incl_reward", "market_price_usd"};
    for (const auto& d : series.rows()) {
        out.rows.push_back({format_date(d.date), format_double(d.hash_rate_ghs),
                            format_double(d.block_reward), format_double(d.tx_fees),
                            format_double(d.uncle_reward), format_double(d.uncle_incl_reward),
                            format_double(d.market_price_usd)});
    }
    csv::write_file(path, out);
}

// --- HardwareCatalog ---

HardwareCatalog HardwareCatalog::from_rows(std::vector<HardwareSpec> rows) {
    std::set<std::string> seen;
    for (const auto& hw : rows) {
        validate(hw);
        if (!seen.insert(hw.name).second) {
            throw DuplicateNameError("duplicate hardware name: " + hw.name);
        }
    }
    HardwareCatalog catalog;
    catalog.rows_ = std::move(rows);
    return catalog;
}

HardwareCatalog load_hardware_catalog(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const int c_name = require_column(table, "name", path);
    const int c_power = require_column(table, "power_w", path);
    const int c_price = require_column(table, "price_usd", path);
    const int c_eff = require_column(table, "efficiency_j_per_mh", path);
    const int c_year = require_column(table, "release_year", path);

    std::vector<HardwareSpec> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        HardwareSpec hw;
        hw.name = r[static_cast<std::size_t>(c_name)];
        hw.power_w = csv::to_double(r[static_cast<std::size_t>(c_power)], cell_context(path, i, "power_w"));
        hw.price_usd =
            csv::to_double(r[static_cast<std::size_t>(c_price)], cell_context(path, i, "price_usd"));
        const auto& eff = r[static_cast<std::size_t>(c_eff)];
        if (!eff.empty()) {
            hw.efficiency_j_per_mh =
                csv::to_double(eff, cell_context(path, i, "efficiency_j_per_mh"));
        }
        hw.release_year = static_cast<int>(
            csv::to_int(r[static_cast<std::size_t>(c_year)], cell_context(path, i, "release_year")));
        try {
            validate(hw);
        } catch (const DomainError& e) {
            throw SchemaError(cell_context(path, i, "values") + ": " + e.what());
        }
        rows.push_back(std::move(hw));
    }
    return HardwareCatalog::from_rows(std::move(rows));
}

void save_hardware_catalog(const HardwareCatalog& catalog, const std::filesystem::path& path) {
    csv::Table out;
    out.header = {"name", "power_w", "price_usd", "efficiency_j_per_mh", "release_year"};
    for (const auto& hw : catalog.rows()) {
        out.rows.push_back({hw.name, format_double(hw.power_w), format_double(hw.price_usd),
                            hw.efficiency_j_per_mh ? format_double(*hw.efficiency_j_per_mh) : "",
                            std::to_string(hw.release_year)});
    }
    csv::write_file(path, out);
}

// --- AdoptionCurveSet ---

AdoptionCurveSet AdoptionCurveSet::from_curves(std::vector<AdoptionCurve> curves) {
    std::set<std::string> seen;
    for (const auto& curve : curves) {
        if (curve.technology.empty()) {
            throw SchemaError("adoption curve with empty technology name");
        }
        if (!seen.insert(curve.technology).second) {
            throw DuplicateNameError("duplicate technology: " + curve.technology);
        }
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const auto& pt = curve.points[i];
            if (pt.years_since_introduction < 0) {
                throw SchemaError(curve.technology + ": years_since_introduction must be >= 0");
            }
            if (!(pt.adoption_fraction >= 0.0 && pt.adoption_fraction <= 1.0)) {
                throw RangeError(curve.technology + " at year " +
                                 std::to_string(pt.years_since_introduction) +
                                 ": adoption_fraction outside [0,1]");
            }
            if (i > 0 &&
                curve.points[i - 1].years_since_introduction >= pt.years_since_introduction) {
                throw NonMonotoneDateError(curve.technology +
                                           ": years_since_introduction not strictly increasing");
            }
        }
    }
    AdoptionCurveSet set;
    set.curves_ = std::move(curves);
    return set;
}

AdoptionCurveSet AdoptionCurveSet::only(const std::string& technology) const {
    for (const auto& curve : curves_) {
        if (curve.technology == technology) {
            return from_curves({curve});
        }
    }
    throw EmptySetError("no adoption curve named '" + technology + "'");
}

AdoptionCurveSet load_adoption_curves(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const int c_tech = require_column(table, "technology", path);
    const int c_year = require_column(table, "years_since_introduction", path);
    const int c_frac = require_column(table, "adoption_fraction", path);

    // rows for one technology are contiguous in the file; keep file order
    std::vector<AdoptionCurve> curves;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        const std::string& tech = r[static_cast<std::size_t>(c_tech)];
        if (curves.empty() || curves.back().technology != tech) {
            curves.push_back({tech, {}});
        }
        AdoptionPoint pt;
        pt.years_since_introduction = static_cast<int>(csv::to_int(
            r[static_cast<std::size_t>(c_year)], cell_context(path, i, "years_since_introduction")));
        pt.adoption_fraction =
            csv::to_double(r[static_cast<std::size_t>(c_frac)], cell_context(path, i, "adoption_fraction"));
        curves.back().points.push_back(pt);
    }
    return AdoptionCurveSet::from_curves(std::move(curves));
}

void save_adoption_curves(const AdoptionCurveSet& curves, const std::filesystem::path& path) {
    csv::Table out;
    out.header = {"technology", "years_since_introduction", "adoption_fraction"};
    for (const auto& curve : curves.curves()) {
        for (const auto& pt : curve.points) {
            out.rows.push_back({curve.technology, std::to_string(pt.years_since_introduction),
                                format_double(pt.adoption_fraction)});
        }
    }
    csv::write_file(path, out);
}

// --- TransactionSeries ---

TransactionSeries TransactionSeries::from_rows(std::vector<TransactionYear> rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].transactions < 0.0 || !std::isfinite(rows[i].transactions)) {
            throw NegativeValueError("transaction count for year " + std::to_string(rows[i].year) +
                                     " must be non-negative");
        }
        if (i > 0 && rows[i - 1].year >= rows[i].year) {
            throw NonMonotoneDateError("transaction years not strictly increasing at " +
                                       std::to_string(rows[i].year));
        }
    }
    TransactionSeries series;
    series.rows_ = std::move(rows);
    return series;
}

TransactionSeries load_transaction_series(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const int c_year = require_column(table, "year", path);
    const int c_tx = require_column(table, "transactions", path);

    std::vector<TransactionYear> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        TransactionYear t;
        t.year =
            static_cast<int>(csv::to_int(r[static_cast<std::size_t>(c_year)], cell_context(path, i, "year")));
        t.transactions =
            csv::to_double(r[static_cast<std::size_t>(c_tx)], cell_context(path, i, "transactions"));
        rows.push_back(t);
    }
    return TransactionSeries::from_rows(std::move(rows));
}

void save_transaction_series(const TransactionSeries& series, const std::filesystem::path& path) {
    csv::Table out;
    out.header = {"year", "transactions"};
    for (const auto& row : series.rows()) {
        out.rows.push_back({std::to_string(row.year), format_double(row.transactions)});
    }
    csv::write_file(path, out);
}

}  // namespace chainfp
