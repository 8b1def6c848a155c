#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maslov/error.hpp"
#include "maslov/semiring.hpp"
#include "maslov/semiring_laws.hpp"

using namespace maslov;

TEST_CASE("tropical_add definitions") {
    CHECK(tropical_add(3, 5, Semiring::max_plus()) == 5);
    CHECK(tropical_add(3, 5, Semiring::min_plus()) == 3);
    CHECK(tropical_add(-7.5, kNegInf, Semiring::max_plus()) == -7.5);
    CHECK(tropical_add(kInf, 2, Semiring::min_plus()) == 2);
    CHECK(tropical_add(kNegInf, kNegInf, Semiring::max_plus()) == kNegInf);
}

TEST_CASE("tropical_mul definitions") {
    const auto mp = Semiring::max_plus();
    CHECK(tropical_mul(3, 5, mp) == 8);
    CHECK(tropical_mul(4, kNegInf, mp) == kNegInf);
    CHECK(tropical_mul(kNegInf, kNegInf, mp) == kNegInf);
    CHECK(tropical_mul(-1.25, 0, mp) == -1.25);
    CHECK(tropical_mul(4, kInf, Semiring::min_plus()) == kInf);
    CHECK(Semiring::subtropical(0.5).mul(kNegInf, 3) == kNegInf);
}

TEST_CASE("opposite infinity and NaN are rejected") {
    CHECK_THROWS_AS(Semiring::max_plus().add(kInf, 1), ParameterError);
    CHECK_THROWS_AS(Semiring::min_plus().mul(kNegInf, 1), ParameterError);
    CHECK_THROWS_AS(Semiring::max_plus().add(std::nan(""), 1), ParameterError);
    CHECK_THROWS_AS(Semiring::subtropical(-1), ParameterError);
    CHECK_THROWS_AS(Semiring::subtropical(0), ParameterError);
    CHECK_THROWS_AS(subtropical_add(0, 0, 0), ParameterError);
}

TEST_CASE("subtropical_add closed forms") {
    // h log(e^{u/h} + e^{v/h}) evaluated directly where it does not overflow
    auto direct = [](double u, double v, double h) { return h * std::log(std::exp(u / h) + std::exp(v / h)); };
    CHECK(subtropical_add(0, 0, 1) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    CHECK(subtropical_add(0, 0, 0.01) == doctest::Approx(0.00693147180559945).epsilon(1e-14));
    CHECK(subtropical_add(2.5, kNegInf, 0.3) == 2.5);
    CHECK(subtropical_add(kNegInf, kNegInf, 0.3) == kNegInf);
    for (double h : {1.0, 0.5, 0.1})
        for (double u : {-3.0, -0.5, 0.0, 1.0, 4.0})
            for (double v : {-2.0, 0.0, 0.25, 3.0})
                CHECK(subtropical_add(u, v, h) == doctest::Approx(direct(u, v, h)).epsilon(1e-13));
    // no overflow far from the origin
    CHECK(subtropical_add(1000, 999, 0.01) == 1000);
    CHECK(std::isfinite(subtropical_add(-1e6, -1e6, 1e-3)));
}

TEST_CASE("subtropical tends to max as h -> 0") {
    const double u = 1.3, v = -0.4;
    double prev = kInf;
    for (double h : {1.0, 0.1, 0.01, 0.001}) {
        const double gap = subtropical_add(u, v, h) - std::max(u, v);
        CHECK(gap >= 0);
        CHECK(gap <= prev);
        prev = gap;
    }
    CHECK(prev < 1e-12);
}

TEST_CASE("standard order") {
    CHECK(standard_order_leq(2, 5, Semiring::max_plus()));
    CHECK_FALSE(standard_order_leq(2, 5, Semiring::min_plus()));
    CHECK(standard_order_leq(5, 2, Semiring::min_plus()));
    for (double a : {-3.0, 0.0, 17.0}) CHECK(standard_order_leq(kNegInf, a, Semiring::max_plus()));
    CHECK(standard_order_leq(4, 4, Semiring::max_plus()));
    CHECK_THROWS_AS(standard_order_leq(1, 2, Semiring::subtropical(1)), UnsupportedError);
}

TEST_CASE("semiring descriptors") {
    CHECK(Semiring::max_plus().zero() == kNegInf);
    CHECK(Semiring::min_plus().zero() == kInf);
    CHECK(Semiring::subtropical(0.1).zero() == kNegInf);
    CHECK(Semiring::max_plus().one() == 0);
    CHECK(Semiring::max_plus().is_idempotent());
    CHECK_FALSE(Semiring::subtropical(2).is_idempotent());
    CHECK(Semiring::subtropical(0.5) == Semiring::subtropical(0.5));
    CHECK_FALSE(Semiring::subtropical(0.5) == Semiring::subtropical(0.25));
}

TEST_CASE("format_ext / parse_ext") {
    CHECK(format_ext(kNegInf) == "-inf");
    CHECK(format_ext(kInf) == "inf");
    CHECK(format_ext(0.1, 12) == "0.1");
    CHECK(format_ext(1.0 / 3.0, 12) == "0.333333333333");
    for (double x : {0.1, -2.5e-300, 1.0 / 3.0, 12345.678901234567, -0.0}) CHECK(parse_ext(format_ext(x)) == x);
    CHECK(parse_ext("-inf") == kNegInf);
    CHECK(parse_ext("+INF") == kInf);
    CHECK(parse_ext("Inf") == kInf);
    CHECK(parse_ext("1e3") == 1000);
    CHECK_THROWS_AS(parse_ext("1.5x"), ParseError);
    CHECK_THROWS_AS(parse_ext(""), ParseError);
    CHECK_THROWS_AS(parse_ext("nan"), ParseError);
}

TEST_CASE("law suite on the three semirings") {
    for (const auto& s : {Semiring::max_plus(), Semiring::min_plus()})
        for (const auto& r : check_semiring_laws(s, 2000, 7)) {
            INFO(s.name() << ' ' << r.law);
            CHECK(r.violations == 0);
            CHECK(r.max_error == 0);
        }
    for (double h : {1.0, 0.1}) {
        const auto rs = check_semiring_laws(Semiring::subtropical(h), 2000, 7);
        CHECK(rs.size() == 11);
        for (const auto& r : rs) {
            INFO(h << ' ' << r.law);
            CHECK(r.violations == 0);
            CHECK(r.max_error <= 1e-12);
        }
    }
}

TEST_CASE("law suite is reproducible from the seed") {
    const auto a = check_semiring_laws(Semiring::subtropical(0.1), 500, 42);
    const auto b = check_semiring_laws(Semiring::subtropical(0.1), 500, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].max_error == b[i].max_error);
}
