#include "doctest.h"

#include <cmath>

#include "lppcond/config.hpp"
#include "lppcond/rng.hpp"

using namespace lppcond;

TEST_CASE("config parsing") {
    const Config c = Config::from_string(
        "# comment line\n"
        "model.a = 1\n"
        "model.ell=5.5   # trailing comment\n"
        "geometry.r = 0.25, 0.5 ,0.75\n"
        "run.label = two words\n"
        "\n");
    CHECK(c.has("model.a"));
    CHECK_FALSE(c.has("model.b"));
    CHECK(c.get_double("model.a", 0) == 1.0);
    CHECK(c.get_double("model.ell", 0) == 5.5);
    CHECK(c.get_double("model.b", 2.5) == 2.5);
    CHECK(c.require_str("run.label") == "two words");
    const auto lst = c.get_list("geometry.r");
    REQUIRE(lst.size() == 3);
    CHECK(lst[1] == 0.5);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(Config::from_string("model.a 1\n"), ConfigError);  // missing '='
    CHECK_THROWS_AS(Config::from_string("= 1\n"), ConfigError);        // empty key
    const Config c = Config::from_string("k = abc\n");
    CHECK_THROWS_AS(c.get_double("k", 0), ConfigError);
    CHECK_THROWS_AS(c.require_double("missing"), ConfigError);
    CHECK_THROWS_AS(Config::from_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("config hash is order independent and value sensitive") {
    const Config a = Config::from_string("x.a=1\nx.b=2\n");
    const Config b = Config::from_string("x.b=2\nx.a=1\n");
    CHECK(a.hash() == b.hash());
    Config c = a;
    c.set("x.b", "3");
    CHECK(c.hash() != a.hash());
    CHECK_FALSE(a.hash().empty());
}

TEST_CASE("counter rng determinism and range") {
    CHECK(cell_u01(1, 2, 3) == cell_u01(1, 2, 3));
    CHECK(cell_u01(1, 2, 3) != cell_u01(2, 2, 3));
    CHECK(cell_u01(1, 2, 3) != cell_u01(1, 3, 3));
    for (int i = 0; i < 1000; ++i) {
        const double u = cell_u01(99, i, 7 * i + 1);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("exponential cells have mean and variance 1") {
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double e = cell_exponential(12345, i / 500, i % 500);
        s += e;
        s2 += e * e;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("counter stream normals") {
    CounterStream cs(4242, 1);
    const int n = 100000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = cs.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.02);
    CHECK(std::abs(s2 / n - 1.0) < 0.03);
    // Streams are reproducible and distinct.
    CounterStream a(1, 0), b(1, 0), c(1, 1);
    CHECK(a.u01() == b.u01());
    CHECK(a.u01() != c.u01());
}
