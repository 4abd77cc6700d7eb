#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ews/csv.hpp"
#include "ews/data.hpp"
#include "ews/errors.hpp"
#include "ews/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

using namespace ews;

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

Date d(int y, int m, int dd) { return Date{y, m, dd}; }

std::vector<Date> day_axis(Date start, std::size_t n) {
    std::vector<Date> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = start.plus_days(static_cast<std::int64_t>(i));
    return out;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
    void fill(const std::string& content) const {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
};

}  // namespace

TEST_CASE("date parse and format round trip") {
    const Date x = Date::parse("2008-09-15");
    CHECK(x == d(2008, 9, 15));
    CHECK(x.to_string() == "2008-09-15");
    CHECK(Date::parse("1999-01-01") < x);
}

TEST_CASE("date parse rejects malformed and impossible input") {
    CHECK_THROWS_AS(Date::parse("2008-13-01"), ParseError);
    CHECK_THROWS_AS(Date::parse("2008-02-30"), ParseError);
    CHECK_THROWS_AS(Date::parse("2008/02/01"), ParseError);
    CHECK_THROWS_AS(Date::parse("garbage"), ParseError);
    CHECK_THROWS_AS(Date::parse("2008-2-1x"), ParseError);
}

TEST_CASE("date day arithmetic round trips through epoch days") {
    CHECK(d(1970, 1, 1).to_days() == 0);
    CHECK(d(1970, 1, 2).to_days() == 1);
    CHECK(d(2000, 2, 28).next_day() == d(2000, 2, 29));  // leap year
    CHECK(d(1900, 2, 28).next_day() == d(1900, 3, 1));   // century non-leap

    Rng rng(123);
    for (int i = 0; i < 200; ++i) {
        const auto days = static_cast<std::int64_t>(rng.below(40000)) - 5000;
        const Date x = Date::from_days(days);
        CHECK(x.to_days() == days);
        CHECK(Date::parse(x.to_string()) == x);
        CHECK(x.plus_days(17).to_days() == days + 17);
    }
}

TEST_CASE("log returns match the definition and drop one row") {
    PriceSeries p;
    p.dates = day_axis(d(2020, 1, 1), 3);
    p.close = {100.0, 105.0, 84.0};
    const ReturnSeries r = log_returns(p);
    REQUIRE(r.size() == 2);
    CHECK(r.dates[0] == d(2020, 1, 2));
    CHECK(r.values[0] == doctest::Approx(100.0 * std::log(1.05)).epsilon(1e-14));
    CHECK(r.values[1] == doctest::Approx(100.0 * std::log(84.0 / 105.0)).epsilon(1e-14));
}

TEST_CASE("price series validation failures") {
    PriceSeries p;
    p.dates = day_axis(d(2020, 1, 1), 2);
    p.close = {100.0, -1.0};
    CHECK_THROWS_AS(p.validate(), ValidationError);

    p.close = {100.0, 101.0};
    p.dates[1] = p.dates[0];
    CHECK_THROWS_AS(p.validate(), ValidationError);

    p.dates = {d(2020, 1, 1)};
    p.close = {100.0};
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("realized volatility equals the direct prefix computation") {
    SUBCASE("hand value") {
        // returns {1, 3}: running mean 2, mean squared deviation 1.
        CHECK(realized_volatility(std::vector<double>{1.0, 3.0}, 1) == doctest::Approx(1.0));
    }
    SUBCASE("random prefixes") {
        Rng rng(7);
        std::vector<double> r(40);
        for (double& v : r) v = rng.normal();
        for (std::size_t t = 1; t < r.size(); t += 3) {
            double mean = 0.0;
            for (std::size_t i = 0; i <= t; ++i) mean += r[i];
            mean /= static_cast<double>(t + 1);
            double ss = 0.0;
            for (std::size_t i = 0; i <= t; ++i) ss += (r[i] - mean) * (r[i] - mean);
            const double expected = std::sqrt(ss / static_cast<double>(t + 1));
            CHECK(realized_volatility(r, t) == doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("needs two observations") {
        CHECK_THROWS_AS(realized_volatility(std::vector<double>{1.0, 2.0}, 0), ValidationError);
    }
}

TEST_CASE("feature table column access and slicing") {
    FeatureTable t;
    t.dates = day_axis(d(2021, 3, 1), 4);
    t.add_column("a", {1, 2, 3, 4});
    t.add_column("b", {5, 6, 7, 8});
    CHECK(t.rows() == 4);
    CHECK(t.cols() == 2);
    CHECK(t.has_column("a"));
    CHECK_FALSE(t.has_column("zz"));
    CHECK(t.column("b")[2] == 7);
    CHECK(t.column_index("b") == 1);
    CHECK_THROWS_AS(t.column("zz"), ValidationError);
    CHECK_THROWS_AS(t.add_column("c", {1.0}), ValidationError);  // length mismatch

    const FeatureTable s = t.slice(1, 3);
    CHECK(s.rows() == 2);
    CHECK(s.dates[0] == d(2021, 3, 2));
    CHECK(s.column("a") == std::vector<double>{2, 3});

    t.validate();
    t.dates[3] = t.dates[2];
    CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("panel alignment forward fills and trims uncovered head rows") {
    FeatureTable daily;
    daily.dates = day_axis(d(2022, 5, 1), 6);
    daily.add_column("close", {1, 2, 3, 4, 5, 6});

    FeatureTable monthly;
    monthly.dates = {d(2022, 4, 20), d(2022, 5, 2), d(2022, 5, 4)};
    monthly.add_column("cpi", {kNan, 9.0, 11.0});       // first release on May 2
    monthly.add_column("rate", {2.0, kNan, 3.0});       // covered from before the axis

    const FeaturePanel p = align_panel(daily, monthly);
    // cpi has no value until 2022-05-02, so May 1 is dropped.
    REQUIRE(p.rows() == 5);
    CHECK(p.dates.front() == d(2022, 5, 2));
    CHECK(p.column("close") == std::vector<double>{2, 3, 4, 5, 6});
    CHECK(p.column("cpi") == std::vector<double>{9, 9, 11, 11, 11});
    CHECK(p.column("rate") == std::vector<double>{2, 2, 3, 3, 3});
    p.validate();
}

TEST_CASE("panel alignment edge cases") {
    FeatureTable daily;
    daily.dates = day_axis(d(2022, 5, 1), 3);
    daily.add_column("close", {1, 2, 3});

    SUBCASE("empty monthly table passes through") {
        const FeaturePanel p = align_panel(daily, FeatureTable{});
        CHECK(p.rows() == 3);
        CHECK(p.column("close") == daily.column("close"));
    }
    SUBCASE("a column that never observes anything is an error naming it") {
        FeatureTable monthly;
        monthly.dates = {d(2022, 5, 2)};
        monthly.add_column("ghost", {kNan});
        CHECK_THROWS_WITH_AS(align_panel(daily, monthly),
                             doctest::Contains("ghost"), ValidationError);
    }
    SUBCASE("monthly data entirely after the axis is also uncovered") {
        FeatureTable monthly;
        monthly.dates = {d(2022, 6, 1)};
        monthly.add_column("late", {1.0});
        CHECK_THROWS_AS(align_panel(daily, monthly), ValidationError);
    }
}

TEST_CASE("standardizer freezes statistics from the fitted rows") {
    FeaturePanel p;
    p.dates = day_axis(d(2020, 1, 1), 4);
    p.add_column("x", {1, 3, 100, 200});
    p.add_column("flat", {7, 7, 7, 7});

    const Standardizer s = Standardizer::fit(p, 0, 2);  // only rows 0..1
    CHECK(s.mean[0] == doctest::Approx(2.0));
    CHECK(s.stdev[0] == doctest::Approx(1.0));  // population stdev of {1,3}
    CHECK(s.mean[1] == doctest::Approx(7.0));
    CHECK(s.stdev[1] == doctest::Approx(1.0));  // constant column convention

    const FeaturePanel z = s.apply(p);
    CHECK(z.column("x")[0] == doctest::Approx(-1.0));
    CHECK(z.column("x")[1] == doctest::Approx(1.0));
    CHECK(z.column("x")[2] == doctest::Approx(98.0));  // rows beyond the fit just transform
    CHECK(z.column("flat") == std::vector<double>{0, 0, 0, 0});

    const std::vector<double> row2 = s.apply_row(p, 2);
    CHECK(row2[0] == z.column("x")[2]);
    CHECK(row2[1] == z.column("flat")[2]);
}

TEST_CASE("double formatting round trips arbitrary bits") {
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        double v = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(61)) - 30.0);
        if (i % 7 == 0) v = -v;
        const double back = parse_double(format_double(v));
        CHECK(back == v);
    }
    CHECK(parse_double(format_double(0.1)) == 0.1);
    CHECK_THROWS_AS(parse_double("1.25x"), ParseError);
    CHECK_THROWS_AS(parse_double(""), ParseError);
    CHECK_THROWS_AS(parse_double("1e999"), ParseError);
}

TEST_CASE("table writing and reading round trips bit for bit") {
    TempFile f("tmp_test_data_roundtrip.csv");
    FeatureTable t;
    t.dates = day_axis(d(2019, 12, 30), 20);
    Rng rng(5);
    std::vector<double> a(20), b(20);
    for (std::size_t i = 0; i < 20; ++i) {
        a[i] = rng.normal() * 1e-7;
        b[i] = rng.normal() * 1e9;
    }
    t.add_column("alpha", a);
    t.add_column("beta", b);
    write_table(f.path, t);

    const FeatureTable back = read_table(f.path);
    REQUIRE(back.rows() == t.rows());
    CHECK(back.dates == t.dates);
    CHECK(back.names == t.names);
    CHECK(back.column("alpha") == a);  // exact doubles, not approximate
    CHECK(back.column("beta") == b);
}

TEST_CASE("csv reader diagnostics carry the line number") {
    TempFile f("tmp_test_data_bad.csv");

    SUBCASE("bad number") {
        f.fill("date,x\n2020-01-01,1.5\n2020-01-02,oops\n");
        CHECK_THROWS_WITH_AS(read_table(f.path), doctest::Contains(":3"), ParseError);
    }
    SUBCASE("bad date") {
        f.fill("date,x\n2020-13-01,1.5\n");
        CHECK_THROWS_WITH_AS(read_table(f.path), doctest::Contains(":2"), ParseError);
    }
    SUBCASE("ragged row") {
        f.fill("date,x,y\n2020-01-01,1.5\n");
        CHECK_THROWS_AS(read_table(f.path), ParseError);
    }
    SUBCASE("duplicate dates name the date") {
        f.fill("date,x\n2020-01-01,1\n2020-01-01,2\n");
        CHECK_THROWS_WITH_AS(read_table(f.path), doctest::Contains("2020-01-01"),
                             ValidationError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_table("tmp_test_data_nonexistent.csv"), IoError);
    }
}

TEST_CASE("csv reader sorts rows and reads empty cells as missing") {
    TempFile f("tmp_test_data_sort.csv");
    f.fill("date,x\n2020-01-03,3\n2020-01-01,1\n2020-01-02,\n");
    const FeatureTable t = read_table(f.path);
    REQUIRE(t.rows() == 3);
    CHECK(t.dates[0] == d(2020, 1, 1));
    CHECK(t.dates[2] == d(2020, 1, 3));
    CHECK(t.column("x")[0] == 1);
    CHECK(std::isnan(t.column("x")[1]));
    CHECK(t.column("x")[2] == 3);
}

TEST_CASE("price panel loader splits daily and monthly roles") {
    TempFile f("tmp_test_data_panel.csv");
    f.fill(
        "date,close,volume,cpi\n"
        "2020-01-01,100,10,\n"
        "2020-01-02,101,11,2.5\n"
        "2020-01-03,102,12,\n");
    PanelSchema schema;
    schema.monthly = {"cpi"};
    const LoadedPanel p = load_price_panel(f.path, schema);
    CHECK(p.prices.close == std::vector<double>{100, 101, 102});
    CHECK(p.daily.has_column("close"));
    CHECK(p.daily.has_column("volume"));
    CHECK_FALSE(p.daily.has_column("cpi"));
    REQUIRE(p.monthly.has_column("cpi"));
    CHECK(std::isnan(p.monthly.column("cpi")[0]));
    CHECK(p.monthly.column("cpi")[1] == 2.5);

    SUBCASE("gaps in a daily column are rejected") {
        TempFile g("tmp_test_data_panel_bad.csv");
        g.fill("date,close,volume\n2020-01-01,100,\n2020-01-02,101,11\n");
        CHECK_THROWS_WITH_AS(load_price_panel(g.path, PanelSchema{}),
                             doctest::Contains("volume"), ValidationError);
    }
}
