#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "maslov/error.hpp"
#include "maslov/grid.hpp"
#include "maslov/idempotent.hpp"

using namespace maslov;

namespace {

template <class F>
GridFunction sample1(const GridDomain& d, F f, Semiring s = Semiring::max_plus()) {
    return GridFunction::sample(d, [&](std::span<const double> x) { return f(x[0]); }, s);
}

GridFunction random_grid(std::mt19937_64& rng, const GridDomain& d) {
    std::uniform_int_distribution<int> v(-40, 40);
    std::vector<double> vals(d.size());
    for (auto& x : vals) x = v(rng) / 8.0;
    return GridFunction(d, vals);
}

}  // namespace

TEST_CASE("grid domain indexing") {
    const GridDomain d({0, -1}, {1, 1}, 5);
    CHECK(d.size() == 25);
    CHECK(d.spacing(0) == 0.25);
    CHECK(d.spacing(1) == 0.5);
    CHECK(d.max_spacing() == 0.5);
    const std::vector<std::size_t> idx{3, 1};
    CHECK(d.flatten(idx) == 16);
    CHECK(d.unflatten(16) == idx);
    CHECK(d.point(16) == std::vector<double>{0.75, -0.5});
    CHECK_THROWS_AS(GridDomain({0}, {1}, 1), ShapeError);
    CHECK_THROWS_AS(GridDomain({0}, {0}, 3), ShapeError);
    CHECK_THROWS_AS(GridDomain({0, 1}, {1}, 3), ShapeError);
    CHECK_THROWS_AS(GridFunction(d, std::vector<double>(3)), ShapeError);
    CHECK_THROWS_AS(GridFunction(d, 0.0, Semiring::subtropical(1)), UnsupportedError);
}

TEST_CASE("grid csv round trip and errors") {
    const GridDomain d({-1, 0}, {1, 2}, 3);
    std::vector<double> v(9);
    for (std::size_t k = 0; k < 9; ++k) v[k] = k == 4 ? kNegInf : 0.1 * double(k) - 1.0 / 3.0;
    const GridFunction g(d, v);
    std::stringstream ss;
    write_grid_csv(ss, g);
    CHECK(read_grid_csv(ss) == g);

    std::istringstream bad_header("1,0,1\n0\n0\n");
    CHECK_THROWS_WITH_AS(read_grid_csv(bad_header), doctest::Contains("line 1"), ParseError);
    std::istringstream bad_value("1,0,1,3\n0\nzz\n1\n");
    CHECK_THROWS_WITH_AS(read_grid_csv(bad_value), doctest::Contains("line 3"), ParseError);
    std::istringstream too_few("1,0,1,3\n0\n1\n");
    CHECK_THROWS_AS(read_grid_csv(too_few), ParseError);
    std::istringstream too_many("1,0,1,2\n0\n1\n2\n");
    CHECK_THROWS_WITH_AS(read_grid_csv(too_many), doctest::Contains("line 4"), ParseError);
}

TEST_CASE("idempotent integral") {
    const auto line = GridDomain::line(-1, 1, 101);
    CHECK(idempotent_integral(sample1(line, [](double x) { return -x * x; })) == 0);
    CHECK(idempotent_integral(GridFunction(line, -3.5)) == -3.5);
    CHECK(idempotent_integral(sample1(GridDomain::line(0, 1, 11), [](double x) { return x; }, Semiring::min_plus())) ==
          0);
    CHECK(idempotent_integral(GridFunction(line, kNegInf)) == kNegInf);
}

TEST_CASE("measure integral of two shifted parabolas") {
    const auto d = GridDomain::line(-2, 2, 4001);
    const auto phi = sample1(d, [](double x) { return -x * x; });
    const auto psi = sample1(d, [](double x) { return -(x - 1) * (x - 1); });
    // sup_x -x^2 - (x-1)^2 = -1/2 at x = 1/2
    CHECK(std::abs(measure_integral(phi, psi) + 0.5) <= grid_tolerance(d));
    CHECK(measure_integral(phi, GridFunction(d, 0.0)) == idempotent_integral(phi));
    CHECK_THROWS_AS(measure_integral(phi, GridFunction(GridDomain::line(-2, 2, 11), 0.0)), ShapeError);
}

TEST_CASE("bottom values never win") {
    const auto d = GridDomain::line(0, 1, 5);
    const GridFunction phi(d, std::vector<double>{kNegInf, 1, kNegInf, 3, kNegInf});
    const GridFunction psi(d, std::vector<double>{100, 0, 100, 0, 100});
    CHECK(measure_integral(phi, psi) == 3);
}

TEST_CASE("scalar product") {
    const auto d = GridDomain::line(-1, 1, 201);
    const auto vee = sample1(d, [](double x) { return -std::abs(x); });
    CHECK(scalar_product(vee, vee) == 0);
    CHECK(scalar_product(vee, GridFunction(d, 0.0)) == idempotent_integral(vee));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_grid(rng, d), b = random_grid(rng, d);
        CHECK(scalar_product(a, b) == scalar_product(b, a));
    }
}

TEST_CASE("kernel operators") {
    const auto d = GridDomain::line(-1, 1, 401);
    const auto phi = sample1(d, [](double y) { return -y * y; });
    const auto id = KernelFunction::sample(d, d, [](auto x, auto y) { return x[0] == y[0] ? 0.0 : kNegInf; });
    CHECK(kernel_apply(id, phi) == phi);

    const auto psi = sample1(d, [](double y) { return -std::abs(y - 0.3); });
    const auto rank1 = KernelFunction::sample(d, d, [](auto, auto y) { return -std::abs(y[0] - 0.3); });
    const auto r = kernel_apply(rank1, phi);
    for (double v : r.values()) CHECK(v == scalar_product(psi, phi));

    // sup_y -(x-y)^2/2 - y^2 = -x^2/3, maximiser y = x/3
    const auto gauss = KernelFunction::sample(d, d, [](auto x, auto y) { return -(x[0] - y[0]) * (x[0] - y[0]) / 2; });
    const auto q = kernel_apply(gauss, phi);
    double err = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double x = d.coordinate(0, k);
        err = std::max(err, std::abs(q[k] + x * x / 3));
    }
    CHECK(err <= grid_tolerance(d));

    // index-callable overload agrees with the materialised kernel
    const auto q2 = kernel_apply(d, phi, [&](std::size_t i, std::size_t j) {
        const double dx = d.coordinate(0, i) - d.coordinate(0, j);
        return -dx * dx / 2;
    });
    CHECK(q2 == q);
}

TEST_CASE("min-plus kernel against brute force") {
    const auto d = GridDomain::line(0, 1, 33);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> vals(d.size());
    for (auto& v : vals) v = u(rng);
    const GridFunction phi(d, vals, Semiring::min_plus());
    auto k = [&](std::size_t i, std::size_t j) { return std::abs(double(i) - double(j)) * 0.1; };
    const auto r = kernel_apply(d, phi, k);
    for (std::size_t i = 0; i < d.size(); ++i) {
        double best = kInf;
        for (std::size_t j = 0; j < d.size(); ++j) best = std::min(best, k(i, j) + vals[j]);
        CHECK(r[i] == best);
    }
    CHECK(r.spec() == Semiring::min_plus());
}

TEST_CASE("sup-convolution") {
    const auto d = GridDomain::line(-2, 2, 401);
    const auto phi = sample1(d, [](double x) { return -x * x; });
    const double s = d.spacing(0);
    const GridFunction delta(GridDomain::line(-s, s, 3), std::vector<double>{kNegInf, 0, kNegInf});
    const auto pd = sup_convolution(phi, delta);
    REQUIRE(pd.size() == phi.size() + 2);
    for (std::size_t i = 0; i < phi.size(); ++i) CHECK(pd[i + 1] == phi[i]);

    // sup_x -x^2 - (g-x)^2 = -g^2/2; compare where the maximiser g/2 lies in the grid
    const auto conv = sup_convolution(phi, phi);
    CHECK(conv.domain().lower()[0] == -4);
    CHECK(conv.domain().points_per_axis() == 801);
    double err = 0;
    for (std::size_t k = 0; k < conv.size(); ++k) {
        const double g = conv.domain().coordinate(0, k);
        err = std::max(err, std::abs(conv[k] + g * g / 2));
    }
    CHECK(err <= grid_tolerance(d));

    std::mt19937_64 rng(8);
    const auto dd = GridDomain::line(0, 2, 17);
    for (int i = 0; i < 10; ++i) {
        const auto a = random_grid(rng, dd), b = random_grid(rng, GridDomain::line(-1, 0, 9));
        CHECK(sup_convolution(a, b) == sup_convolution(b, a));
    }
    CHECK_THROWS_AS(sup_convolution(phi, GridFunction(GridDomain::line(0, 1, 3), 0.0)), ShapeError);
}

TEST_CASE("2-D sup-convolution against brute force") {
    const GridDomain a({0, 0}, {1, 1}, 5), b({-0.5, 0}, {0.5, 1}, 5);
    std::mt19937_64 rng(23);
    const auto fa = random_grid(rng, a), fb = random_grid(rng, b);
    const auto c = sup_convolution(fa, fb);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto g = c.domain().unflatten(k);
        double best = kNegInf;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto x = a.unflatten(i);
            if (g[0] < x[0] || g[1] < x[1] || g[0] - x[0] >= 5 || g[1] - x[1] >= 5) continue;
            const std::vector<std::size_t> y{g[0] - x[0], g[1] - x[1]};
            best = std::max(best, fa[i] + fb[b.flatten(y)]);
        }
        CHECK(c[k] == best);
    }
}

TEST_CASE("legendre transform closed forms") {
    const auto d = GridDomain::line(-5, 5, 1001);
    const auto xi = GridDomain::line(-2, 2, 81);
    // additive mode: sup xi x - x^2/2 = xi^2/2
    const auto t = legendre_transform(sample1(d, [](double x) { return -x * x / 2; }), xi);
    double err = 0;
    for (std::size_t k = 0; k < t.size(); ++k) err = std::max(err, std::abs(t[k] - xi.coordinate(0, k) * xi.coordinate(0, k) / 2));
    CHECK(err <= grid_tolerance(d));
    // fenchel mode: sup xi x - x^2/2 over phi = x^2/2
    const auto f = legendre_transform(sample1(d, [](double x) { return x * x / 2; }), xi, LegendreMode::Fenchel);
    CHECK(sup_distance(f, t) <= 1e-12);

    const auto bottom = legendre_transform(GridFunction(d, kNegInf), xi);
    for (double v : bottom.values()) CHECK(v == kNegInf);
    CHECK_THROWS_AS(legendre_transform(GridFunction(d, 0.0, Semiring::min_plus()), xi), UnsupportedError);
}

TEST_CASE("fenchel biconjugate of convex functions") {
    const auto d = GridDomain::line(-1, 1, 201);
    const auto slopes = GridDomain::line(-4, 4, 401);
    const auto phi = sample1(d, [](double x) { return x * x + 0.5 * x; });
    const auto star = legendre_transform(phi, slopes, LegendreMode::Fenchel);
    const auto bi = legendre_transform(star, d, LegendreMode::Fenchel);
    // Fenchel-Young: the biconjugate never exceeds phi
    for (std::size_t k = 0; k < d.size(); ++k) CHECK(bi[k] <= phi[k] + 1e-12);
    CHECK(sup_distance(bi, phi) <= grid_tolerance(d));
}

TEST_CASE("pointwise operations") {
    const auto d = GridDomain::line(0, 1, 3);
    const GridFunction a(d, std::vector<double>{1, kNegInf, 3}), b(d, std::vector<double>{2, 0, kNegInf});
    CHECK(pointwise_add(a, b).values() == std::vector<double>{2, 0, 3});
    CHECK(pointwise_mul(a, b).values() == std::vector<double>{3, kNegInf, kNegInf});
    CHECK(shift(a, 2).values() == std::vector<double>{3, kNegInf, 5});
    const auto n = negate(a);
    CHECK(n.spec() == Semiring::min_plus());
    CHECK(n.values() == std::vector<double>{-1, kInf, -3});
    CHECK(negate(n) == a);
    const GridFunction m(d, std::vector<double>{1, 5, 3}, Semiring::min_plus());
    CHECK(pointwise_add(m, m) == m);
    CHECK_THROWS_AS(pointwise_add(a, m), ShapeError);
}
