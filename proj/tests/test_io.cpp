#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/io.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <limits>

using namespace epl;

TEST_CASE("float formatting keeps 17 significant digits") {
    CHECK(format_double(0.1) == "1.0000000000000001e-01");
    CHECK(format_double(-2.5) == "-2.5000000000000000e+00");
    CHECK(format_double(0.0) == "0.0000000000000000e+00");
    for (double v : {1.0 / 3.0, 6.02214076e23, -1e-300, 5e-324}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "Infinity");
    CHECK(format_double(std::nan("")) == "NaN");
}

TEST_CASE("json dump is ordered and uses the float format") {
    Json j;
    j["z"] = 1.5;
    j["a"] = {{"k", 2}, {"v", Json::array({0.25, true, "s"})}};
    const std::string s = dump_json(j, 0);
    CHECK(s == "{\"z\":1.5000000000000000e+00,\"a\":{\"k\":2,\"v\":[2.5000000000000000e-01,true,\"s\"]}}\n");
    CHECK(Json::parse(s)["a"]["v"][0].get<double>() == 0.25);
    Json nf;
    nf["x"] = std::nan("");
    CHECK(dump_json(nf, 0) == "{\"x\":\"NaN\"}\n");
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CsvTable t({"x", "y"});
    t.add_meta("tool", "elastoplasmon");
    t.add_row({"1", "a,b"});
    CHECK(t.str() == "# tool=elastoplasmon\r\nx,y\r\n1,\"a,b\"\r\n");
    CHECK_THROWS(t.add_row({"1"}));
}

TEST_CASE("modal field json round trip") {
    ModalField f(3);
    f.set({1, 2, -1}, Complex(0.1, -2.0));
    f.set({3, 3, 2}, 4.0);
    const Json j = to_json(f);
    CHECK(j["N_max"] == 3);
    CHECK(j["modes"].size() == 2);
    const ModalField g = modal_field_from_json(Json::parse(dump_json(j)));
    CHECK(g.n_max() == 3);
    CHECK(g.get({1, 2, -1}) == Complex(0.1, -2.0));
    CHECK(g.get({3, 3, 2}) == Complex(4.0));
    CHECK_THROWS_AS(modal_field_from_json(Json::parse(R"({"N_max":1,"modes":[{"family":1,"n":2,"m":0,"re":1,"im":0}]})")),
                    ArgumentError);
}
