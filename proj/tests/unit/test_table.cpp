#include "grushin/errors.hpp"
#include "grushin/table.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace grushin;

namespace {

std::string to_csv(const SweepTable& t) {
    std::ostringstream out;
    write_csv(t, out);
    return out.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("grushin_test_" + name);
}

}  // namespace

TEST_CASE("one header and one row give two lines") {
    SweepTable t;
    t.headers = {"x"};
    t.add_row({1.5});
    CHECK(to_csv(t) == "x\n1.5000000000000000e+00\n");
}

TEST_CASE("empty table is header only") {
    SweepTable t;
    t.headers = {"a", "b"};
    CHECK(to_csv(t) == "a,b\n");
}

TEST_CASE("numbers round-trip exactly") {
    SweepTable t;
    t.headers = {"v"};
    const double values[] = {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0};
    for (double v : values) t.add_row({v});
    std::istringstream in(to_csv(t));
    const SweepTable back = read_csv(in);
    REQUIRE(back.rows.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::get<double>(back.rows[i][0]) == values[i]);
}

TEST_CASE("strings with separators are quoted") {
    SweepTable t;
    t.headers = {"name", "v"};
    t.add_row({std::string("a,b \"c\""), 2.0});
    const std::string csv = to_csv(t);
    CHECK(csv == "name,v\n\"a,b \"\"c\"\"\",2.0000000000000000e+00\n");
    std::istringstream in(csv);
    CHECK(std::get<std::string>(read_csv(in).rows[0][0]) == "a,b \"c\"");
}

TEST_CASE("invalid tables are rejected") {
    SweepTable t;
    t.headers = {"a", "b"};
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidProblem);
    t.rows.push_back({1.0, std::numeric_limits<double>::quiet_NaN()});
    CHECK_THROWS_AS(t.validate(), InvalidProblem);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_csv(t, sink), InvalidProblem);
}

TEST_CASE("file output is deterministic") {
    SweepTable t;
    t.headers = {"s", "lambda"};
    for (int i = 0; i < 10; ++i) t.add_row({0.1 * i, std::exp(0.3 * i)});
    const auto a = temp_file("a.csv"), b = temp_file("b.csv");
    emit_csv(t, a);
    emit_csv(t, b);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(sa == sb);
    CHECK(sa.back() == '\n');
    CHECK(read_csv(a).number(3, "lambda") == std::exp(0.3 * 3));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("unwritable paths raise IoError") {
    SweepTable t;
    t.headers = {"a"};
    CHECK_THROWS_AS(emit_csv(t, "/nonexistent-dir/x.csv"), IoError);
    CHECK_THROWS_AS(read_csv(std::filesystem::path("/nonexistent-dir/x.csv")), IoError);
}

TEST_CASE("column lookup") {
    SweepTable t;
    t.headers = {"a", "b"};
    t.add_row({1.0, std::string("x")});
    CHECK(t.column("b") == 1);
    CHECK(t.number(0, "a") == 1.0);
    CHECK_THROWS(t.column("zz"));
    CHECK_THROWS(t.number(0, "b"));
}

TEST_CASE("svg output contains one polyline per series") {
    const auto path = temp_file("plot.svg");
    emit_svg(path, "title", "x", "y", {{"one", {0, 1, 2}, {1, 4, 9}}, {"two", {0, 1}, {2, 2}}});
    std::ifstream in(path);
    const std::string svg((std::istreambuf_iterator<char>(in)), {});
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++count;
    }
    CHECK(count == 2);
    CHECK(svg.rfind("</svg>") != std::string::npos);
    std::filesystem::remove(path);
}
