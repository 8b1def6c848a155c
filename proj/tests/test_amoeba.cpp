#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "maslov/amoeba.hpp"
#include "maslov/error.hpp"

using namespace maslov;

namespace {

SparsePolynomial line_poly(Complex cx = 1.0) {
    return SparsePolynomial(2, {{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, cx}});
}

std::set<std::array<long long, 2>> ray_dirs(const PlanarPLSet& s) {
    std::set<std::array<long long, 2>> out;
    for (const Ray& r : s.rays) out.insert(r.dir);
    return out;
}

// Distance from p to the closed segment ab, computed from scratch.
double seg_dist(const Point2& p, const Point2& a, const Point2& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double t = std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
    return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

const Window kBox{-3, 3, -3, 3};

}  // namespace

TEST_CASE("deformation") {
    const SparsePolynomial f(1, {{{1}, std::exp(2.0)}});
    const auto g = deform_polynomial(f, 0.5);
    CHECK(std::abs(g.terms()[0].coef) == doctest::Approx(std::exp(4.0)).epsilon(1e-14));
    const SparsePolynomial u(1, {{{0}, Complex(0.6, 0.8)}});
    const auto v = deform_polynomial(u, 0.1).terms()[0].coef;
    CHECK(std::abs(v - Complex(0.6, 0.8)) <= 1e-15);
    CHECK(deform_polynomial(line_poly(2.0), 1.0) == line_poly(2.0));
    CHECK_THROWS_AS(deform_polynomial(f, 0), ParameterError);
}

TEST_CASE("valuation polynomial") {
    const auto tf = valuation_polynomial(line_poly(Complex(0, -std::exp(1.5))));
    REQUIRE(tf.terms.size() == 3);
    for (const auto& t : tf.terms) CHECK(t.value == doctest::Approx(t.exp == Exponent{1, 0} ? 1.5 : 0.0));
}

TEST_CASE("amoeba slices of x + y + 1") {
    const auto f = line_poly();
    SUBCASE("unit modulus") {
        // z1 = e^{2 pi i / 3}: z2 = -1 - z1 has modulus 1; z1 = 1 gives z2 = -2
        const auto s = amoeba_slice(f, 1.0, 0.0, 3);
        REQUIRE(s.points.size() == 3);
        for (const auto& p : s.points) CHECK(p[0] == 0.0);
        std::vector<double> ys;
        for (const auto& p : s.points) ys.push_back(p[1]);
        std::sort(ys.begin(), ys.end());
        CHECK(std::abs(ys[0]) <= 1e-12);
        CHECK(std::abs(ys[1]) <= 1e-12);
        CHECK(ys[2] == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
        CHECK(s.max_residual <= 1e-12);
    }
    SUBCASE("far slice") {
        const auto s = amoeba_slice(f, 1.0, 3.0, 64);
        CHECK(s.points.size() == 64);
        for (const auto& p : s.points) {
            CHECK(p[1] >= std::log(std::exp(3.0) - 1) - 1e-12);
            CHECK(p[1] <= std::log(std::exp(3.0) + 1) + 1e-12);
        }
    }
    SUBCASE("second axis and small h") {
        const double h = 0.25;
        const auto s = amoeba_slice(deform_polynomial(f, h), h, 0.5, 16, 1);
        for (const auto& p : s.points) {
            CHECK(p[1] == 0.5);
            // |z1| = |1 + z2| lies in [e^{x/h} - 1, e^{x/h} + 1]
            CHECK(p[0] >= h * std::log(std::exp(0.5 / h) - 1) - 1e-12);
            CHECK(p[0] <= h * std::log(std::exp(0.5 / h) + 1) + 1e-12);
        }
    }
    SUBCASE("degenerate fibres") {
        const SparsePolynomial y_minus_1(2, {{{0, 0}, -1.0}, {{0, 1}, 1.0}});
        for (double x : {-2.0, 0.0, 1.7}) {
            const auto s = amoeba_slice(y_minus_1, 1.0, x, 8);
            REQUIRE(s.points.size() == 8);
            for (const auto& p : s.points) CHECK(std::abs(p[1]) <= 1e-14);
        }
        const SparsePolynomial xy(2, {{{1, 1}, 1.0}});
        CHECK(amoeba_slice(xy, 1.0, 0.3, 8).points.empty());
        CHECK(amoeba_slice(y_minus_1, 1.0, 0.0, 8, 1).degenerate);
    }
    SUBCASE("sampling") {
        CHECK(sample_amoeba(f, 1.0, kBox, 0, 8).points.empty());
        const auto a = sample_amoeba(f, 0.5, kBox, 40, 16, 1);
        const auto b = sample_amoeba(f, 0.5, kBox, 40, 16, 4);
        CHECK(a.points == b.points);
        CHECK(a.max_residual <= 1e-9);
        for (const auto& p : a.points) CHECK(kBox.contains(p));
        CHECK_THROWS_AS(sample_amoeba(f, 1.0, Window{1, 0, 0, 1}, 10, 8), ParameterError);
    }
}

TEST_CASE("tropical curves") {
    SUBCASE("tropical line") {
        const auto s = tropical_variety(valuation_polynomial(line_poly()));
        REQUIRE(s.vertices.size() == 1);
        CHECK(std::abs(s.vertices[0][0]) <= 1e-14);
        CHECK(std::abs(s.vertices[0][1]) <= 1e-14);
        CHECK(s.edges.empty());
        CHECK(ray_dirs(s) == std::set<std::array<long long, 2>>{{-1, 0}, {0, -1}, {1, 1}});
    }
    SUBCASE("translated line") {
        // max(x + d, y, 0) has its vertex at (-d, 0)
        const double d = 0.75;
        const auto s = tropical_variety(valuation_polynomial(line_poly(std::exp(d))));
        REQUIRE(s.vertices.size() == 1);
        CHECK(s.vertices[0][0] == doctest::Approx(-d).epsilon(1e-12));
        CHECK(std::abs(s.vertices[0][1]) <= 1e-12);
    }
    SUBCASE("a single tie line") {
        const TropicalPolynomial t{2, {{{1, 0}, 0.0}, {{0, 0}, 0.0}}};
        const auto s = tropical_variety(t);
        CHECK(s.edges.empty());
        CHECK(ray_dirs(s) == std::set<std::array<long long, 2>>{{0, 1}, {0, -1}});
        for (const Ray& r : s.rays) CHECK(s.vertices[r.base][0] == 0.0);
    }
    SUBCASE("conic with a bounded edge") {
        // max(0, x, y, x + y - 1): two trivalent vertices joined by one edge
        const TropicalPolynomial t{2, {{{0, 0}, 0.0}, {{1, 0}, 0.0}, {{0, 1}, 0.0}, {{1, 1}, -1.0}}};
        const auto s = tropical_variety(t);
        CHECK(s.edges.size() == 1);
        CHECK(s.rays.size() == 4);
        // every vertex has the maximum attained at least three times
        for (const auto& v : s.vertices) {
            std::vector<double> vals;
            for (const auto& term : t.terms) vals.push_back(term.value + term.exp[0] * v[0] + term.exp[1] * v[1]);
            std::sort(vals.rbegin(), vals.rend());
            CHECK(vals[0] - vals[2] <= 1e-12);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(tropical_variety(TropicalPolynomial{2, {{{1, 0}, 0.0}}}), DomainError);
        CHECK_THROWS_AS(tropical_variety(TropicalPolynomial{3, {}}), DomainError);
    }
}

TEST_CASE("hausdorff distances") {
    const std::vector<Point2> a{{0, 0}, {1, 1}}, b{{3, 4}}, c{{0, 0}};
    const Window big{-10, 10, -10, 10};
    CHECK(hausdorff_distance(a, a, big) == 0);
    CHECK(hausdorff_distance(c, b, big) == 5);
    CHECK(hausdorff_distance(a, c, big) == doctest::Approx(std::sqrt(2.0)));

    const auto spine = tropical_variety(valuation_polynomial(line_poly()));
    std::vector<Point2> on_spine;
    const double pitch = 0.01;
    for (double t = 0; t <= 3.0 + 1e-9; t += pitch) {
        on_spine.push_back({-t, 0});
        on_spine.push_back({0, -t});
        on_spine.push_back({t, t});
    }
    // samples lie on the rays, at most pitch * sqrt 2 apart
    const double d = hausdorff_distance(on_spine, spine, kBox);
    CHECK(d <= pitch * std::sqrt(2.0));

    // forward direction against a hand-rolled segment distance
    const std::vector<Point2> off{{1, -1}, {-2, 0.5}};
    double forward = 0;
    for (const auto& p : off) {
        const double best = std::min({seg_dist(p, {0, 0}, {-3, 0}), seg_dist(p, {0, 0}, {0, -3}), seg_dist(p, {0, 0}, {3, 3})});
        forward = std::max(forward, best);
    }
    CHECK(hausdorff_distance(off, spine, kBox) >= forward - 1e-12);
    CHECK_THROWS_AS(hausdorff_distance(std::vector<Point2>{{9, 9}}, spine, kBox), DomainError);
}

TEST_CASE("convergence study") {
    const auto f = line_poly();
    const std::vector<double> hs{1.0, 0.5};
    const auto rows = convergence_study(f, hs, kBox, 60, 16);
    REQUIRE(rows.size() == 2);
    const auto spine = tropical_variety(valuation_polynomial(f));
    const auto s1 = sample_amoeba(f, 1.0, kBox, 60, 16);
    CHECK(rows[0].distance == hausdorff_distance(s1.points, spine, kBox));
    CHECK(rows[0].points == s1.points.size());
    CHECK(rows[1].distance < rows[0].distance);
    for (const auto& r : rows) CHECK(r.max_residual <= 1e-9);

    const SparsePolynomial mono(2, {{{1, 0}, 2.0}});
    CHECK_THROWS_AS(convergence_study(mono, hs, kBox, 10, 8), DomainError);
    const std::vector<double> bad{0.5, -1};
    CHECK_THROWS_AS(convergence_study(f, bad, kBox, 10, 8), ParameterError);
}
