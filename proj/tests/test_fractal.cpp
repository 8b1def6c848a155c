#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "maslov/error.hpp"
#include "maslov/fractal.hpp"

using namespace maslov;

namespace {

// Least-squares slope, written out independently of the library.
double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= double(x.size());
    my /= double(y.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) num += (x[i] - mx) * (y[i] - my), den += (x[i] - mx) * (x[i] - mx);
    return num / den;
}

const double kCantorDim = std::log(2.0) / std::log(3.0);

}  // namespace

TEST_CASE("ball volume") {
    CHECK(ball_volume(2, 1) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(ball_volume(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ball_volume(3, 2) == doctest::Approx(4.0 * std::numbers::pi * 8.0 / 3.0).epsilon(1e-14));
    CHECK(ball_volume(3, 2) == doctest::Approx(33.510).epsilon(1e-4));
    CHECK(ball_volume(kCantorDim, 1) > 0);
    CHECK_THROWS_AS(ball_volume(0, 1), ParameterError);
    CHECK_THROWS_AS(ball_volume(1, -1), ParameterError);
}

TEST_CASE("covering numbers") {
    CHECK(covering_number(PointCloud{2, {0.3, 0.7}, "", 0}, 0.01) == 1);
    CHECK(covering_number(PointCloud{2, {0.3, 0.7}, "", 0}, 100) == 1);
    CHECK(covering_number(PointCloud{1, {0.0, 1.0}, "", 0}, 0.3) == 2);
    CHECK(covering_number(PointCloud{3, {0, 0, 0, 1, 1, 1}, "", 0}, 0.4) == 2);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    PointCloud c{1, {}, "", 0};
    for (int i = 0; i < 1000; ++i) c.coords.push_back(u(rng));
    const auto n = covering_number(c, 0.05);
    CHECK(n >= 10);
    CHECK(n <= 20);
    CHECK_THROWS_AS(covering_number(c, 0), ParameterError);
    CHECK_THROWS_AS(covering_number(PointCloud{1, {}, "", 0}, 1), DomainError);
}

TEST_CASE("every occupied cell fits in a rho-ball") {
    // cells of side 2 rho / sqrt(n): the diameter equals 2 rho
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t dim : {1u, 2u, 3u}) {
        PointCloud c{dim, {}, "", 0};
        for (int i = 0; i < 300 * int(dim); ++i) c.coords.push_back(u(rng));
        for (double rho : {0.5, 0.2, 0.05}) {
            // greedy rho-net: centres pairwise > rho apart, so balls of rho/2 are disjoint
            std::vector<std::size_t> centres;
            for (std::size_t i = 0; i < c.size(); ++i) {
                bool covered = false;
                for (std::size_t j : centres) {
                    double d2 = 0;
                    for (std::size_t a = 0; a < dim; ++a) d2 += std::pow(c.point(i)[a] - c.point(j)[a], 2);
                    if (d2 <= rho * rho) covered = true;
                }
                if (!covered) centres.push_back(i);
            }
            // a greedy net is a rho-cover; grid cells of diameter 2 rho are at least as many
            // as the minimal 2-rho cover, which is at least |net| / 3^dim
            const auto n = covering_number(c, rho);
            CHECK(double(n) * std::pow(3.0, double(dim)) >= double(centres.size()));
            CHECK(n >= covering_number(c, 2 * rho));
        }
    }
}

TEST_CASE("generators") {
    const auto k = cantor_set(3);
    CHECK(k.size() == 16);
    CHECK(k.resolution == doctest::Approx(1.0 / 27));
    CHECK(k.coords.front() == 0);
    CHECK(k.coords.back() == 1);
    CHECK(segment(5).coords == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(sierpinski(2).size() == 27);
    const auto sq = generate_cloud("square 4");
    CHECK(sq.dim == 2);
    CHECK(sq.size() == 16);
    CHECK(scaled(segment(3), 2).coords == std::vector<double>{0, 1, 2});
    CHECK(product(segment(2), segment(3)).size() == 6);
    CHECK_THROWS_AS(generate_cloud("cantor"), ParameterError);
    CHECK_THROWS_AS(generate_cloud("koch 3"), ParameterError);
    CHECK_THROWS_AS(segment(1), ParameterError);
}

TEST_CASE("box-counting dimension") {
    SUBCASE("segment") {
        const auto seg = segment(100000);
        // over s in [1, 7] even the exact count ceil(1/(2 rho)) bends the fit
        const auto s17 = linspace(1, 7, 13);
        std::vector<double> oracle;
        for (double s : s17) oracle.push_back(std::log(std::ceil(1.0 / (2.0 * std::exp(-s)))));
        const auto e17 = hb_dimension(seg, s17);
        CHECK(e17.slope == doctest::Approx(slope_of(s17, oracle)).epsilon(1e-3));
        const auto e = hb_dimension(seg, linspace(2, 8, 13));
        CHECK(std::abs(e.slope - 1.0) <= 0.05);
        CHECK_FALSE(e.resolution_warning);
        CHECK(e.ratios.back() == doctest::Approx(e.log_values.back() / 8.0));
    }
    SUBCASE("cantor set") {
        const auto e = hb_dimension(cantor_set(12), linspace(1, 8, 15));
        CHECK(std::abs(e.slope - kCantorDim) <= 0.05);
        CHECK(std::abs(e.shifted_slope - kCantorDim) <= 0.05);
    }
    SUBCASE("finite set saturates") {
        const auto e = hb_dimension(segment(10), linspace(8, 14, 7));
        CHECK(std::abs(e.slope) <= 0.05);
        CHECK(e.resolution_warning);
    }
    SUBCASE("sierpinski triangle") {
        const auto e = hb_dimension(sierpinski(8), linspace(1, 5, 9));
        CHECK(std::abs(e.slope - std::log(3.0) / std::log(2.0)) <= 0.1);
    }
    SUBCASE("scale validation") {
        const std::vector<double> two{1, 2}, down{3, 2, 1};
        CHECK_THROWS_AS(hb_dimension(segment(10), two), ParameterError);
        CHECK_THROWS_AS(hb_dimension(segment(10), down), ParameterError);
    }
}

TEST_CASE("local dimension") {
    const auto uniform = uniform_measure(segment(100001));
    const std::vector<double> mid{0.5};
    const auto e = local_dimension(uniform, mid, linspace(1, 7, 13));
    CHECK(std::abs(e.slope - 1.0) <= 0.05);

    const auto cantor = uniform_measure(cantor_set(12));
    const std::vector<double> origin{0.0};
    CHECK(std::abs(local_dimension(cantor, origin, linspace(1, 8, 15)).slope - kCantorDim) <= 0.1);

    const auto atom = uniform_measure(PointCloud{1, {0.25}, "", 0});
    const std::vector<double> at{0.25}, away{0.9};
    CHECK(local_dimension(atom, at, linspace(1, 6, 6)).slope == 0.0);
    CHECK_THROWS_AS(local_dimension(atom, away, linspace(1, 6, 6)), DomainError);
    CHECK(ball_measure(uniform, mid, 0.1) == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("point csv") {
    std::istringstream in("0,0,1\n1,0,2\n\n0,1,1\n");
    const auto mu = read_points_csv(in, true);
    CHECK(mu.atoms.dim == 2);
    CHECK(mu.atoms.size() == 3);
    CHECK(mu.weights == std::vector<double>{1, 2, 1});
    std::istringstream ragged("0,0\n1\n");
    CHECK_THROWS_WITH_AS(read_points_csv(ragged, false), doctest::Contains("line 2"), ParseError);
    std::istringstream junk("0.5\n0.25\nabc\n");
    CHECK_THROWS_WITH_AS(read_points_csv(junk, false), doctest::Contains("line 3"), ParseError);
    std::ostringstream out;
    write_points_csv(out, segment(3));
    std::istringstream back(out.str());
    CHECK(read_points_csv(back, false).atoms.coords == segment(3).coords);
}
