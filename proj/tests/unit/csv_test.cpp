#include <doctest.h>

#include <random>
#include <string>

#include "hurstlab/csv.hpp"
#include "hurstlab/error.hpp"
#include "hurstlab/table.hpp"

using namespace hurstlab;

TEST_CASE("tick csv maps fields directly") {
    const TickSeries ticks = parse_tick_csv("1364774820,93.25,0.5\n1364774825,93.30,1.2");
    REQUIRE(ticks.size() == 2);
    CHECK(ticks.records[0].timestamp == 1364774820);
    CHECK(ticks.records[0].price == 93.25);
    CHECK(ticks.records[0].volume == 0.5);
    CHECK(ticks.records[1].price == 93.30);
}

TEST_CASE("tick csv sorts out-of-order rows, ties keep arrival order") {
    const TickSeries ticks =
        parse_tick_csv("30,3.0,1\n10,1.0,1\n20,2.0,1\n20,2.5,1\n");
    REQUIRE(ticks.size() == 4);
    CHECK(ticks.records[0].timestamp == 10);
    CHECK(ticks.records[1].timestamp == 20);
    CHECK(ticks.records[1].price == 2.0);  // first arrival wins the earlier slot
    CHECK(ticks.records[2].price == 2.5);
    CHECK(ticks.records[3].timestamp == 30);
}

TEST_CASE("tick csv rejects invalid rows with the line number") {
    SUBCASE("non-positive price") {
        try {
            parse_tick_csv("1364774820,-1.0,0.5");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == errc::validation);
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("wrong field count") {
        try {
            parse_tick_csv("10,1.0,1\n20,2.0\n");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == errc::parse);
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("nan and inf tokens") {
        CHECK_THROWS_AS(parse_tick_csv("10,nan,1"), Error);
        CHECK_THROWS_AS(parse_tick_csv("10,inf,1"), Error);
        CHECK_THROWS_AS(parse_tick_csv("10,1.0,nan"), Error);
    }
    SUBCASE("negative volume") {
        CHECK_THROWS_AS(parse_tick_csv("10,1.0,-0.5"), Error);
    }
    SUBCASE("negative timestamp") {
        CHECK_THROWS_AS(parse_tick_csv("-10,1.0,0.5"), Error);
    }
    SUBCASE("garbage number") {
        CHECK_THROWS_AS(parse_tick_csv("10,abc,0.5"), Error);
    }
}

TEST_CASE("tick csv rejects empty input as a likely wrong file") {
    CHECK_THROWS_AS(parse_tick_csv(""), Error);
    CHECK_THROWS_AS(parse_tick_csv("\n\n"), Error);
}

TEST_CASE("tick csv honors delimiter and header-skip overrides") {
    CsvConfig config;
    config.delimiter = ';';
    config.skip_rows = 1;
    const TickSeries ticks = parse_tick_csv("time;price;volume\n10;1.5;0.5\n", config);
    REQUIRE(ticks.size() == 1);
    CHECK(ticks.records[0].price == 1.5);
}

TEST_CASE("tick csv preserves the row count") {
    std::string text;
    std::mt19937_64 rng(7);
    const int rows = 257;
    for (int i = 0; i < rows; ++i) {
        text += std::to_string(rng() % 100000) + "," +
                std::to_string(1.0 + (rng() % 1000) / 100.0) + "," +
                std::to_string((rng() % 1000) / 10.0) + "\n";
    }
    CHECK(parse_tick_csv(text).size() == rows);
}

TEST_CASE("tick series round-trips through write_table") {
    std::mt19937_64 rng(11);
    TickSeries original;
    Table table;
    table.columns = {"unixtime", "price", "volume"};
    for (int i = 0; i < 100; ++i) {
        TickRecord rec;
        rec.timestamp = 1364774820 + i * 7;
        rec.price = std::exp(std::sin(static_cast<double>(rng() % 1000)) + 4.5);
        rec.volume = static_cast<double>(rng() % 997) / 31.0;
        original.records.push_back(rec);
        table.add_row({rec.timestamp, rec.price, rec.volume});
    }

    CsvConfig config;
    config.skip_rows = 1;  // the table writer always emits a header line
    const TickSeries parsed = parse_tick_csv(to_string(table, TableFormat::csv), config);
    REQUIRE(parsed.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(parsed.records[i].timestamp == original.records[i].timestamp);
        CHECK(parsed.records[i].price == original.records[i].price);  // %.17g is exact
        CHECK(parsed.records[i].volume == original.records[i].volume);
    }
}

TEST_CASE("daily csv parses the documented format") {
    const PriceSeries prices = parse_daily_csv("date,close\n2011-01-01,0.30\n2011-01-02,0.31\n");
    REQUIRE(prices.size() == 2);
    CHECK(prices.interval == 0);
    CHECK(prices.prices[0] == 0.30);
    CHECK(prices.labels[0] == 1293840000);  // 2011-01-01T00:00:00Z
    CHECK(prices.labels[1] == 1293840000 + 86400);
    CHECK(prices.timestamp_at(1) == prices.labels[1]);
}

TEST_CASE("daily csv keeps calendar gaps as missing observations") {
    // Friday then Monday: the weekend is simply absent, not filled in.
    const PriceSeries prices =
        parse_daily_csv("date,close\n2011-01-07,1.0\n2011-01-10,1.1\n");
    REQUIRE(prices.size() == 2);
    CHECK(prices.labels[1] - prices.labels[0] == 3 * 86400);
}

TEST_CASE("daily csv rejects duplicate and decreasing dates") {
    try {
        parse_daily_csv("date,close\n2011-01-01,0.30\n2011-01-01,0.31\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::validation);
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_daily_csv("date,close\n2011-01-02,0.30\n2011-01-01,0.31\n"), Error);
}

TEST_CASE("daily csv reports unparsable numbers with the line number") {
    try {
        parse_daily_csv("date,close\n2011-01-01,abc\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse);
        CHECK(e.line() == 2);
    }
}

TEST_CASE("daily csv requires the header and valid calendar dates") {
    CHECK_THROWS_AS(parse_daily_csv("2011-01-01,0.30\n"), Error);
    CHECK_THROWS_AS(parse_daily_csv(""), Error);
    CHECK_THROWS_AS(parse_daily_csv("date,close\n"), Error);
    CHECK_THROWS_AS(parse_daily_csv("date,close\n2011-02-29,1.0\n"), Error);
    CHECK_THROWS_AS(parse_daily_csv("date,close\n2011-13-01,1.0\n"), Error);
    CHECK_NOTHROW(parse_daily_csv("date,close\n2012-02-29,1.0\n"));  // leap year
}

TEST_CASE("days_from_civil matches known epochs") {
    CHECK(detail::days_from_civil(1970, 1, 1) == 0);
    CHECK(detail::days_from_civil(2011, 1, 1) == 1293840000 / 86400);
    CHECK(detail::days_from_civil(2000, 3, 1) == 11017);
    CHECK(detail::days_from_civil(1969, 12, 31) == -1);
}
