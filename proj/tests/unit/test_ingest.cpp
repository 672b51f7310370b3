#include <doctest.h>

#include "chainfp/ingest.hpp"
#include "helpers.hpp"

using namespace chainfp;
using testutil::TempDir;

namespace {

const char* kCountryHeader =
    "country_code,node_share,electricity_price_usd_per_kwh,"
    "internet_price_usd_per_month,emission_factor_kgco2_per_kwh\n";

}  // namespace

TEST_CASE("country profiles: single row and exact-sum pair") {
    TempDir tmp;
    const auto one = tmp.write("one.csv", std::string(kCountryHeader) + "US,1.0,0.15,40,0.45\n");
    const auto t1 = load_country_profiles(one);
    REQUIRE(t1.size() == 1);
    CHECK(t1.rows()[0].node_share == 1.0);
    CHECK(t1.rows()[0].electricity_price.value() == 0.15);

    const auto two = tmp.write(
        "two.csv", std::string(kCountryHeader) + "US,0.6,0.15,40,0.45\nDE,0.4,0.3,35,0.4\n");
    const auto t2 = load_country_profiles(two);
    REQUIRE(t2.size() == 2);
    CHECK(t2.rows()[0].node_share + t2.rows()[1].node_share == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("country profiles: share sum off by 20% is rejected") {
    TempDir tmp;
    const auto bad = tmp.write(
        "bad.csv", std::string(kCountryHeader) + "US,0.6,0.15,40,0.45\nDE,0.6,0.3,35,0.4\n");
    CHECK_THROWS_AS(load_country_profiles(bad), ShareSumError);
}

TEST_CASE("country profiles: shares within 1% are renormalized to exactly 1") {
    TempDir tmp;
    const auto near = tmp.write(
        "near.csv", std::string(kCountryHeader) + "US,0.599,0.15,40,0.45\nDE,0.397,0.3,35,0.4\n");
    const auto table = load_country_profiles(near);
    double sum = 0.0;
    for (const auto& row : table.rows()) sum += row.node_share;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("country profiles: duplicates, schema and node_count normalization") {
    TempDir tmp;
    const auto dup = tmp.write(
        "dup.csv", std::string(kCountryHeader) + "US,0.5,0.15,40,0.45\nUS,0.5,0.3,35,0.4\n");
    CHECK_THROWS_AS(load_country_profiles(dup), DuplicateCountryError);

    const auto missing = tmp.write("missing.csv",
                                   "country_code,node_share\nUS,1.0\n");
    CHECK_THROWS_AS(load_country_profiles(missing), SchemaError);

    const auto text = tmp.write(
        "text.csv", std::string(kCountryHeader) + "US,lots,0.15,40,0.45\n");
    CHECK_THROWS_AS(load_country_profiles(text), SchemaError);

    const auto counts = tmp.write(
        "counts.csv",
        "country_code,node_count,electricity_price_usd_per_kwh,"
        "internet_price_usd_per_month,emission_factor_kgco2_per_kwh\n"
        "US,300,0.15,40,0.45\nDE,100,0.3,35,0.4\n");
    const auto table = load_country_profiles(counts);
    CHECK(table.rows()[0].node_share == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(table.rows()[1].node_share == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("network series: empty, zero row, and date ordering") {
    TempDir tmp;
    const char* header =
        "date,hash_rate_ghs,block_reward,tx_fees,uncle_reward,uncle_incl_reward,"
        "market_price_usd\n";
    const auto empty = tmp.write("empty.csv", header);
    CHECK(load_network_series(empty).empty());

    const auto zero = tmp.write("zero.csv", std::string(header) + "2020-01-01,0,0,0,0,0,0\n");
    const auto s = load_network_series(zero);
    REQUIRE(s.size() == 1);
    CHECK(s.rows()[0].hash_rate_ghs == 0.0);

    const auto backwards = tmp.write(
        "backwards.csv",
        std::string(header) + "2020-01-02,1,1,1,0,0,100\n2020-01-01,1,1,1,0,0,100\n");
    CHECK_THROWS_AS(load_network_series(backwards), NonMonotoneDateError);

    const auto negative = tmp.write(
        "negative.csv", std::string(header) + "2020-01-01,-5,1,1,0,0,100\n");
    CHECK_THROWS_AS(load_network_series(negative), NegativeValueError);

    const auto bad_date = tmp.write(
        "bad_date.csv", std::string(header) + "2020-02-30,1,1,1,0,0,100\n");
    CHECK_THROWS_AS(load_network_series(bad_date), SchemaError);
}

TEST_CASE("network series: missing uncle columns default to zero") {
    TempDir tmp;
    const auto path = tmp.write("btc.csv",
                                "date,hash_rate_ghs,block_reward,tx_fees,market_price_usd\n"
                                "2020-01-01,1e9,900,100,9000\n");
    const auto series = load_network_series(path);
    REQUIRE(series.size() == 1);
    CHECK(series.rows()[0].uncle_reward == 0.0);
    CHECK(series.rows()[0].uncle_incl_reward == 0.0);
}

TEST_CASE("hardware catalog: pass-through row and validation") {
    TempDir tmp;
    const char* header = "name,power_w,price_usd,efficiency_j_per_mh,release_year\n";
    const auto one = tmp.write("hw.csv", std::string(header) + "AntminerX,1500,2000,0.10,2020\n");
    const auto catalog = load_hardware_catalog(one);
    REQUIRE(catalog.rows().size() == 1);
    CHECK(catalog.rows()[0].name == "AntminerX");
    CHECK(catalog.rows()[0].efficiency_j_per_mh == doctest::Approx(0.10));

    const auto no_eff = tmp.write("no_eff.csv", std::string(header) + "NodeBox,81,2181.72,,2019\n");
    CHECK_FALSE(load_hardware_catalog(no_eff).rows()[0].efficiency_j_per_mh.has_value());

    const auto dup = tmp.write(
        "dup.csv", std::string(header) + "A,10,10,1,2019\nA,20,20,2,2020\n");
    CHECK_THROWS_AS(load_hardware_catalog(dup), DuplicateNameError);
}

TEST_CASE("adoption curves: range check") {
    TempDir tmp;
    const char* header = "technology,years_since_introduction,adoption_fraction\n";
    const auto bad = tmp.write("bad.csv", std::string(header) + "tv,0,1.2\n");
    CHECK_THROWS_AS(load_adoption_curves(bad), RangeError);

    const auto dip = tmp.write(
        "dip.csv", std::string(header) + "vcr,0,0.1\nvcr,1,0.5\nvcr,2,0.3\n");
    const auto set = load_adoption_curves(dip);  // dips are valid data
    REQUIRE(set.size() == 1);
    CHECK(set.curves()[0].points[2].adoption_fraction == doctest::Approx(0.3));

    const auto unsorted = tmp.write(
        "unsorted.csv", std::string(header) + "tv,1,0.1\ntv,1,0.2\n");
    CHECK_THROWS_AS(load_adoption_curves(unsorted), NonMonotoneDateError);
}

TEST_CASE("adoption curves: only() filters one technology") {
    TempDir tmp;
    const char* header = "technology,years_since_introduction,adoption_fraction\n";
    const auto path = tmp.write(
        "set.csv", std::string(header) + "tv,0,0.1\ntv,1,0.2\nradio,0,0.3\n");
    const auto set = load_adoption_curves(path);
    CHECK(set.only("radio").size() == 1);
    CHECK_THROWS_AS(set.only("telegraph"), EmptySetError);
}

TEST_CASE("transaction series: endpoints and ordering") {
    TempDir tmp;
    const auto path = tmp.write("tx.csv", "year,transactions\n2009,31332\n2020,112559843\n");
    const auto series = load_transaction_series(path);
    REQUIRE(series.size() == 2);
    CHECK(series.rows()[0].transactions == 31332.0);
    CHECK(series.rows()[1].transactions == 112559843.0);

    const auto repeat = tmp.write("repeat.csv", "year,transactions\n2009,1\n2009,2\n");
    CHECK_THROWS_AS(load_transaction_series(repeat), NonMonotoneDateError);
}

TEST_CASE("load -> save -> load is identity on the parsed representation") {
    TempDir tmp;

    const auto countries = load_country_profiles(testutil::data_dir() / "countries_synthetic.csv");
    const auto c_path = tmp.path() / "countries.csv";
    save_country_profiles(countries, c_path);
    const auto countries2 = load_country_profiles(c_path);
    REQUIRE(countries2.size() == countries.size());
    for (std::size_t i = 0; i < countries.size(); ++i) {
        CHECK(countries2.rows()[i].country_code == countries.rows()[i].country_code);
        CHECK(countries2.rows()[i].node_share == countries.rows()[i].node_share);
        CHECK(countries2.rows()[i].electricity_price.value() ==
              countries.rows()[i].electricity_price.value());
        CHECK(countries2.rows()[i].emission_factor.kg_per_kwh() ==
              countries.rows()[i].emission_factor.kg_per_kwh());
    }

    const auto series = load_network_series(testutil::data_dir() / "eth_network_series.csv");
    const auto s_path = tmp.path() / "series.csv";
    save_network_series(series, s_path);
    const auto series2 = load_network_series(s_path);
    REQUIRE(series2.size() == series.size());
    for (std::size_t i = 0; i < series.size(); i += 97) {
        CHECK(series2.rows()[i].date == series.rows()[i].date);
        CHECK(series2.rows()[i].hash_rate_ghs == series.rows()[i].hash_rate_ghs);
        CHECK(series2.rows()[i].block_reward == series.rows()[i].block_reward);
        CHECK(series2.rows()[i].market_price_usd == series.rows()[i].market_price_usd);
    }

    const auto hardware = load_hardware_catalog(testutil::data_dir() / "eth_hardware.csv");
    const auto h_path = tmp.path() / "hardware.csv";
    save_hardware_catalog(hardware, h_path);
    const auto hardware2 = load_hardware_catalog(h_path);
    REQUIRE(hardware2.rows().size() == hardware.rows().size());
    for (std::size_t i = 0; i < hardware.rows().size(); ++i) {
        CHECK(hardware2.rows()[i].name == hardware.rows()[i].name);
        CHECK(hardware2.rows()[i].efficiency_j_per_mh == hardware.rows()[i].efficiency_j_per_mh);
    }

    const auto adoption = load_adoption_curves(testutil::data_dir() / "adoption_curves.csv");
    const auto a_path = tmp.path() / "adoption.csv";
    save_adoption_curves(adoption, a_path);
    const auto adoption2 = load_adoption_curves(a_path);
    REQUIRE(adoption2.size() == adoption.size());
    CHECK(adoption2.curves()[7].technology == adoption.curves()[7].technology);
    CHECK(adoption2.curves()[7].points[30].adoption_fraction ==
          adoption.curves()[7].points[30].adoption_fraction);

    const auto tx = load_transaction_series(testutil::data_dir() / "btc_transactions.csv");
    const auto t_path = tmp.path() / "tx.csv";
    save_transaction_series(tx, t_path);
    const auto tx2 = load_transaction_series(t_path);
    REQUIRE(tx2.size() == tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) {
        CHECK(tx2.rows()[i].year == tx.rows()[i].year);
        CHECK(tx2.rows()[i].transactions == tx.rows()[i].transactions);
    }
}
