#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maslov/amoeba.hpp"
#include "maslov/dequantize.hpp"
#include "maslov/error.hpp"
#include "maslov/fractal.hpp"
#include "maslov/graph.hpp"
#include "maslov/grid.hpp"
#include "maslov/hamilton_jacobi.hpp"
#include "maslov/idempotent.hpp"
#include "maslov/matrix.hpp"
#include "maslov/polynomial.hpp"
#include "maslov/polytope.hpp"
#include "maslov/semiring.hpp"
#include "maslov/semiring_laws.hpp"

namespace maslov::cli {

namespace {

constexpr int kDigits = 12;
constexpr const char* kOutputDirEnv = "MASLOV_OUTPUT_DIR";

struct Common {
    std::string out_path;
    std::string svg_path;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    bool selftest = false;
};

void add_common(CLI::App* sc, Common& c) {
    sc->add_option("--out", c.out_path, "Output file (default: stdout)");
    sc->add_option("--svg", c.svg_path, "Also write an SVG rendering here");
    sc->add_option("--seed", c.seed, "Seed for randomised runs")->capture_default_str();
    sc->add_option("--jobs", c.jobs, "Worker threads where supported")->check(CLI::PositiveNumber)->capture_default_str();
    sc->add_flag("--selftest", c.selftest, "Run the module's built-in examples and exit");
}

std::filesystem::path resolve(const std::string& path) {
    std::filesystem::path p(path);
    const char* dir = std::getenv(kOutputDirEnv);
    if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    return in;
}

/// Runs `emit` against --out (or the console stream).
void emit_to(const std::string& path, std::ostream& console, const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(console);
        return;
    }
    const auto p = resolve(path);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DomainError("cannot write " + p.string());
    emit(f);
    if (!f) throw DomainError("write failed for " + p.string());
}

std::string num(double x) { return format_ext(x, kDigits); }
nlohmann::json jnum(double x) {
    if (!std::isfinite(x)) return num(x);
    return nlohmann::json::parse(num(x));
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(parse_ext(tok));
        } catch (const Error&) {
            throw CLI::ValidationError(what, "not a number: '" + tok + "'");
        }
    }
    if (v.empty()) throw CLI::ValidationError(what, "empty list");
    return v;
}

Window parse_window(const std::string& text) {
    const auto v = parse_list(text, "--window");
    if (v.size() != 4) throw CLI::ValidationError("--window", "expected xmin,xmax,ymin,ymax");
    Window w{v[0], v[1], v[2], v[3]};
    w.validate();
    return w;
}

Semiring parse_semiring(const std::string& name) {
    if (name == "max-plus") return Semiring::max_plus();
    if (name == "min-plus") return Semiring::min_plus();
    throw CLI::ValidationError("--semiring", "expected max-plus or min-plus");
}

// Best-effort plot of a 1-D grid function as a polyline (2-D: grey cells).
void write_grid_svg(std::ostream& out, const GridFunction& g) {
    const GridDomain& d = g.domain();
    double lo = kInf, hi = kNegInf;
    for (double v : g.values())
        if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
    if (!(lo < hi)) lo -= 1, hi += 1;
    const double w = 600, h = 400;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    const std::size_t n = d.points_per_axis();
    if (d.dim() == 1) {
        out << "<polyline fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(g[i])) continue;
            out << double(i) / double(n - 1) * w << ',' << h - (g[i] - lo) / (hi - lo) * h << ' ';
        }
        out << "\"/>\n";
    } else if (d.dim() == 2) {
        const double cw = w / double(n), ch = h / double(n);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const auto idx = d.unflatten(k);
            const int shade = std::isfinite(g[k]) ? int(255 * (g[k] - lo) / (hi - lo)) : 0;
            out << "<rect x=\"" << double(idx[0]) * cw << "\" y=\"" << h - double(idx[1] + 1) * ch << "\" width=\""
                << cw << "\" height=\"" << ch << "\" fill=\"rgb(" << shade << ',' << shade << ',' << shade << ")\"/>\n";
        }
    }
    out << "</svg>\n";
}

// ---------------------------------------------------------------- selftests

class Checks {
public:
    explicit Checks(std::ostream& out) : out_(out) {}

    void expect(const std::string& name, bool ok) {
        out_ << (ok ? "PASS " : "FAIL ") << name << '\n';
        ++total_;
        if (!ok) ++failed_;
    }
    template <class E, class F>
    void expect_throw(const std::string& name, F&& f) {
        bool ok = false;
        try {
            f();
        } catch (const E&) {
            ok = true;
        } catch (...) {
        }
        expect(name, ok);
    }
    int finish() {
        out_ << (failed_ ? "selftest failed: " : "selftest ok: ") << total_ - failed_ << '/' << total_ << " passed\n";
        return failed_ ? 1 : 0;
    }

private:
    std::ostream& out_;
    int total_ = 0;
    int failed_ = 0;
};

int selftest_semiring(std::ostream& out) {
    Checks c(out);
    const auto mp = Semiring::max_plus(), mn = Semiring::min_plus();
    c.expect("max-plus add(3,5) = 5", mp.add(3, 5) == 5);
    c.expect("max-plus add(u,-inf) = u", mp.add(2.5, kNegInf) == 2.5);
    c.expect("min-plus add(3,5) = 3", mn.add(3, 5) == 3);
    c.expect("mul(3,5) = 8", mp.mul(3, 5) == 8 && mn.mul(3, 5) == 8);
    c.expect("max-plus mul(x,-inf) = -inf", mp.mul(7, kNegInf) == kNegInf);
    c.expect("mul(x,0) = x", mp.mul(-4.25, 0) == -4.25);
    c.expect("subtropical_add(u,-inf,h) = u", subtropical_add(1.5, kNegInf, 0.3) == 1.5);
    c.expect("max-plus 2 <= 5", standard_order_leq(2, 5, mp));
    c.expect("min-plus not 2 <= 5", !standard_order_leq(2, 5, mn));
    c.expect_throw<ParameterError>("subtropical h = 0 rejected", [] { Semiring::subtropical(0.0); });
    return c.finish();
}

int selftest_linalg(std::ostream& out) {
    Checks c(out);
    const auto mp = Semiring::max_plus();
    const SemiringMatrix a(2, 2, mp, {1, 2, 3, 4}), b(2, 2, mp, {4, 3, 2, 1});
    c.expect("A (+) A = A", mat_add(a, a) == a);
    c.expect("entrywise max", mat_add(a, b) == SemiringMatrix(2, 2, mp, {4, 3, 3, 4}));
    c.expect("A (+) 0 = A", mat_add(a, SemiringMatrix::zeros(2, 2, mp)) == a);
    c.expect("I A = A", mat_mul(SemiringMatrix::identity(2, mp), a) == a);
    c.expect("A 0 = 0", mat_mul(a, SemiringMatrix::zeros(2, 2, mp)) == SemiringMatrix::zeros(2, 2, mp));
    c.expect("[a]* = [0] for a <= 0", kleene_star(SemiringMatrix(1, 1, mp, {-2})) == SemiringMatrix(1, 1, mp, {0}));
    c.expect_throw<DivergentError>("[1]* diverges", [&] { kleene_star(SemiringMatrix(1, 1, mp, {1})); });
    const SemiringMatrix f(2, 1, mp, {3, -1});
    c.expect("H = 0 gives X = F", solve_bellman(SemiringMatrix::zeros(2, 2, mp), f) == f);
    c.expect_throw<DivergentError>("positive self-loop diverges",
                                   [&] { solve_bellman(SemiringMatrix(2, 2, mp, {1, kNegInf, kNegInf, kNegInf}), f); });
    std::istringstream g("A B 1\nB C 2\nA C 5\n");
    const Graph graph = read_edge_list(g);
    c.expect("three-node distances", shortest_distances(graph, graph.index_of("A")) == std::vector<double>{0, 1, 3});
    return c.finish();
}

int selftest_idempotent(std::ostream& out) {
    Checks c(out);
    const auto line = GridDomain::line(-1, 1, 101);
    auto f1 = [](auto fn) { return [fn](std::span<const double> x) { return fn(x[0]); }; };
    const auto para = GridFunction::sample(line, f1([](double x) { return -x * x; }));
    c.expect("integral of -x^2 = 0", idempotent_integral(para) == 0);
    c.expect("integral of constant", idempotent_integral(GridFunction(line, 2.5)) == 2.5);
    const auto ramp = GridFunction::sample(GridDomain::line(0, 1, 11), f1([](double x) { return x; }), Semiring::min_plus());
    c.expect("min-plus integral of x on [0,1] = 0", idempotent_integral(ramp) == 0);
    const GridFunction one(line, 0.0);
    c.expect("<phi, 1> = integral", measure_integral(para, one) == idempotent_integral(para));
    std::vector<double> holes = para.values();
    for (std::size_t k = 0; k < holes.size(); k += 2) holes[k] = kNegInf;
    const GridFunction holed(line, holes);
    c.expect("bottom never wins", measure_integral(holed, one) == -(line.coordinate(0, 51) * line.coordinate(0, 51)));
    const auto vee = GridFunction::sample(line, f1([](double x) { return -std::abs(x); }));
    c.expect("<-|x|, -|x|> = 0", scalar_product(vee, vee) == 0);
    c.expect("symmetric", scalar_product(vee, para) == scalar_product(para, vee));
    const auto id = KernelFunction::sample(line, line, [](auto x, auto y) { return x[0] == y[0] ? 0.0 : kNegInf; });
    c.expect("identity kernel", kernel_apply(id, para) == para);
    const auto rank1 = KernelFunction::sample(line, line, [](auto, auto y) { return -std::abs(y[0]); });
    const auto k1 = kernel_apply(rank1, para);
    bool flat = true;
    for (double v : k1.values()) flat = flat && v == scalar_product(vee, para);
    c.expect("rank-one kernel", flat);
    const double s = line.spacing(0);
    const GridFunction delta(GridDomain::line(-s, s, 3), std::vector<double>{kNegInf, 0.0, kNegInf});
    const auto conv = sup_convolution(para, delta);
    bool same = conv[0] == kNegInf && conv[conv.size() - 1] == kNegInf;
    for (std::size_t i = 0; i < para.size(); ++i) same = same && conv[i + 1] == para[i];
    c.expect("phi * delta = phi", same);
    const auto small = GridFunction::sample(GridDomain::line(0, 0.2, 11), f1([](double x) { return x * (1 - x); }));
    c.expect("convolution commutes", sup_convolution(para, small) == sup_convolution(small, para));
    const auto bottom = legendre_transform(GridFunction(line, kNegInf), line);
    bool all_bottom = true;
    for (double v : bottom.values()) all_bottom = all_bottom && v == kNegInf;
    c.expect("transform of bottom is bottom", all_bottom);
    return c.finish();
}

int selftest_hj(std::ostream& out) {
    Checks c(out);
    const auto line = GridDomain::line(-1, 1, 65);
    MechanicalSystem sys{{1.0}, builtin_potential("zero"), 0.125, 4, Convention::MinPlus};
    const auto zero = lax_oleinik_evolve({GridFunction(line, 0.0, Semiring::min_plus()), 0.0}, sys);
    bool ok = true;
    for (double v : zero.S.values()) ok = ok && v == 0.0;
    c.expect("S0 = 0, V = 0 stays 0", ok);
    sys.potential = builtin_potential("constant 2");
    const auto ct = lax_oleinik_evolve({GridFunction(line, 0.0, Semiring::min_plus()), 0.0}, sys);
    ok = true;
    for (double v : ct.S.values()) ok = ok && std::abs(v - 2.0 * ct.t) <= 1e-12;
    c.expect("V = c gives S = c t", ok && ct.t == 0.5);

    MechanicalSystem heat{{1.0}, builtin_potential("zero"), 0.01, 10, Convention::MaxPlus};
    const auto gauss = GridFunction::sample(GridDomain::line(-2, 2, 81), [](auto x) { return std::exp(-4 * x[0] * x[0]); });
    const auto u = viscous_solve(gauss, heat, 0.2);
    c.expect("viscous mass conserved", std::abs(trapezoid_mass(u) - trapezoid_mass(gauss)) <= 1e-6 * trapezoid_mass(gauss));
    const auto flat1 = viscous_solve(GridFunction(line, 1.0), heat, 0.2);
    ok = true;
    for (double v : flat1.values()) ok = ok && std::abs(v - 1.0) <= 1e-12;
    c.expect("u = 1 is an equilibrium", ok);
    ok = true;
    const auto logged = dequantize_solution(GridFunction(line, 1.0), 0.3);
    for (double v : logged.values()) ok = ok && v == 0.0;
    c.expect("h log 1 = 0", ok);
    const double h = 0.25;
    const auto phi = GridFunction::sample(line, [](auto x) { return std::sin(3 * x[0]); });
    std::vector<double> ev;
    for (double v : phi.values()) ev.push_back(std::exp(v / h));
    c.expect("h log e^{phi/h} = phi", sup_distance(dequantize_solution(GridFunction(line, ev), h), phi) <= 1e-12);

    sys.potential = builtin_potential("zero");
    const auto s1 = GridFunction::sample(line, [](auto x) { return x[0] * x[0]; }, Semiring::min_plus());
    c.expect("S2 = S1, lambda = 0", superposition_check(s1, s1, 0.0, 0.0, sys).defect == 0.0);
    const auto s2 = GridFunction::sample(line, [](auto x) { return (x[0] - 0.5) * (x[0] - 0.5); }, Semiring::min_plus());
    c.expect("absorbing lambda2", superposition_check(s1, s2, 1.0, sys.semiring().zero(), sys).defect == 0.0);
    return c.finish();
}

int selftest_geometry(std::ostream& out) {
    Checks c(out);
    const SparsePolynomial mono(2, {{{2, 1}, Complex(3, 0)}});
    const std::vector<double> x{0.5, -1.0};
    const double h = 0.1;
    c.expect("monomial dequantizes to <a,x> + h log|c|",
             std::abs(dequantize_at(mono, h, x).value - (0.0 + h * std::log(3.0))) <= 1e-12);
    const SparsePolynomial one_minus_x(1, {{{0}, Complex(1, 0)}, {{1}, Complex(-1, 0)}});
    const std::vector<double> origin{0.0};
    const auto r = dequantize_at(one_minus_x, 0.7, origin);
    c.expect("1 - x at 0 is bottom", r.cancelled && r.value == kNegInf);
    const SparsePolynomial constant(1, {{{0}, Complex(-2, 0)}});
    const std::vector<double> any{3.0};
    c.expect("constant limit is 0", dequantize_limit(constant, any) == 0.0);
    c.expect("newton of monomial", newton_polytope(mono).vertices() == std::vector<LatticePoint>{{2, 1}});
    c.expect("subdifferential of monomial",
             subdifferential_at_origin(mono, 360).vertices() == std::vector<LatticePoint>{{2, 1}});
    const auto tri = Polytope::hull(2, {{0, 0}, {1, 0}, {0, 1}});
    c.expect("P (*) {0} = P", minkowski_mul(tri, Polytope::hull(2, {{0, 0}})) == tri);
    c.expect("P (+) P = P", minkowski_add(tri, tri) == tri);
    c.expect("P (+) subset = P", minkowski_add(tri, Polytope::hull(2, {{0, 0}, {1, 0}})) == tri);
    const SparsePolynomial line3(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
    c.expect("newton of 1 + x + y is the triangle", newton_polytope(line3) == tri);
    return c.finish();
}

int selftest_fractal(std::ostream& out) {
    Checks c(out);
    c.expect("ball_volume(2, 1) = pi", std::abs(ball_volume(2, 1) - std::numbers::pi) <= 1e-12);
    c.expect("ball_volume(1, 1) = 2", std::abs(ball_volume(1, 1) - 2.0) <= 1e-12);
    PointCloud one{2, {0.3, 0.7}, "point", 0};
    c.expect("single point covered once", covering_number(one, 0.25) == 1);
    PointCloud two{1, {0.0, 1.0}, "pair", 0};
    c.expect("two far points need two cells", covering_number(two, 0.2) == 2);
    PointCloud few{1, {0.0, 0.25, 0.5, 0.75}, "four", 0};
    const auto s = linspace(8, 14, 7);
    c.expect("finite set has dimension 0", std::abs(hb_dimension(few, s).slope) <= 0.05);
    const SampledMeasure atom = uniform_measure(PointCloud{1, {0.5}, "atom", 0});
    const std::vector<double> at{0.5};
    c.expect("unit atom has local dimension 0", local_dimension(atom, at, linspace(1, 5, 5)).slope == 0.0);
    return c.finish();
}

int selftest_amoeba(std::ostream& out) {
    Checks c(out);
    const SparsePolynomial unit(2, {{{1, 0}, Complex(0, 1)}, {{0, 1}, 1}, {{0, 0}, -1}});
    c.expect("unit-modulus coefficients are fixed", deform_polynomial(unit, 0.3) == unit);
    const Window w{-2, 2, -2, 2};
    const SparsePolynomial ym1(2, {{{0, 1}, 1}, {{0, 0}, -1}});
    const auto horiz = sample_amoeba(ym1, 1.0, w, 9, 8);
    bool ok = !horiz.points.empty();
    for (const auto& p : horiz.points) ok = ok && std::abs(p[1]) <= 1e-12;
    c.expect("y - 1 gives the horizontal axis", ok);
    const SparsePolynomial xy(2, {{{1, 1}, 1}});
    c.expect("monomial has empty amoeba", sample_amoeba(xy, 1.0, w, 9, 8).points.empty());
    c.expect("zero slices give an empty sample", sample_amoeba(unit, 1.0, w, 0, 8).points.empty());
    const auto vline = tropical_variety({2, {{{1, 0}, 0.0}, {{0, 0}, 0.0}}});
    ok = !vline.rays.empty();
    for (const auto& v : vline.vertices) ok = ok && v[0] == 0.0;
    for (const auto& r : vline.rays) ok = ok && r.dir[0] == 0;
    c.expect("max(x, 0) gives the line x = 0", ok);
    const std::vector<Point2> a{{0, 0}}, b{{3, 4}};
    const Window big{-10, 10, -10, 10};
    c.expect("identical sets at distance 0", hausdorff_distance(a, a, big) == 0.0);
    c.expect("d((0,0), (3,4)) = 5", hausdorff_distance(a, b, big) == 5.0);
    const std::vector<double> hs{1.0};
    c.expect_throw<DomainError>("one-term polynomial has no variety", [&] { convergence_study(xy, hs, w, 5, 4); });
    const auto row = convergence_study(unit, hs, w, 20, 16);
    const auto sample = sample_amoeba(unit, 1.0, w, 20, 16);
    c.expect("h = 1 row is the undeformed spine distance",
             row[0].distance == hausdorff_distance(sample.points, tropical_variety(valuation_polynomial(unit)), w));
    return c.finish();
}

// ---------------------------------------------------------------- commands

struct Command {
    CLI::App* app;
    std::function<int()> body;
    std::function<int(std::ostream&)> selftest;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Idempotent (max-plus / min-plus) analysis toolkit", "maslov"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Common common;
    std::vector<Command> commands;
    auto add = [&](const char* name, const char* about) {
        CLI::App* sc = app.add_subcommand(name, about);
        add_common(sc, common);
        commands.push_back({sc, {}, {}});
        return &commands.back();
    };
    commands.reserve(13);

    // semiring-check
    std::string sr_name = "all", sr_h = "1,0.1";
    std::size_t trials = 10000;
    {
        Command* c = add("semiring-check", "Randomised semiring law suite");
        c->app->add_option("--semiring", sr_name, "max-plus | min-plus | subtropical | all")->capture_default_str();
        c->app->add_option("--h", sr_h, "Subtropical parameters (comma list)")->capture_default_str();
        c->app->add_option("--trials", trials, "Triples per law")->capture_default_str();
        c->selftest = selftest_semiring;
        c->body = [&] {
            std::vector<Semiring> specs;
            if (sr_name == "max-plus" || sr_name == "all") specs.push_back(Semiring::max_plus());
            if (sr_name == "min-plus" || sr_name == "all") specs.push_back(Semiring::min_plus());
            if (sr_name == "subtropical" || sr_name == "all")
                for (double h : parse_list(sr_h, "--h")) specs.push_back(Semiring::subtropical(h));
            if (specs.empty()) throw CLI::ValidationError("--semiring", "unknown semiring " + sr_name);
            std::size_t bad = 0;
            emit_to(common.out_path, out, [&](std::ostream& o) {
                o << "semiring,law,trials,violations,max_error\n";
                for (const auto& s : specs)
                    for (const auto& r : check_semiring_laws(s, trials, common.seed)) {
                        o << s.name() << ',' << r.law << ',' << r.trials << ',' << r.violations << ','
                          << num(r.max_error) << '\n';
                        bad += r.violations;
                    }
            });
            return bad ? 1 : 0;
        };
    }

    // shortest-path
    std::string graph_path, source, method = "jacobi";
    {
        Command* c = add("shortest-path", "Single-source distances by the min-plus Bellman equation");
        c->app->add_option("graph", graph_path, "Edge list: 'src dst weight' per line");
        c->app->add_option("--source", source, "Source node name");
        c->app->add_option("--method", method, "jacobi | gauss-seidel")->capture_default_str();
        c->selftest = selftest_linalg;
        c->body = [&] {
            if (graph_path.empty() || source.empty()) throw CLI::RequiredError("graph and --source");
            if (method != "jacobi" && method != "gauss-seidel")
                throw CLI::ValidationError("--method", "expected jacobi or gauss-seidel");
            auto in = open_input(graph_path);
            const Graph g = read_edge_list(in);
            const auto d = shortest_distances(g, g.index_of(source),
                                              method == "jacobi" ? BellmanMethod::Jacobi : BellmanMethod::GaussSeidel);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_distances_csv(o, g, d, kDigits); });
            return 0;
        };
    }

    // legendre
    std::string grid_path, xi_lower, xi_upper, mode = "additive";
    std::size_t xi_points = 0;
    {
        Command* c = add("legendre", "Discrete Legendre transform of a max-plus grid function");
        c->app->add_option("grid", grid_path, "Grid CSV");
        c->app->add_option("--xi-lower", xi_lower, "Lower corner of the xi grid (comma list)");
        c->app->add_option("--xi-upper", xi_upper, "Upper corner of the xi grid (comma list)");
        c->app->add_option("--xi-points", xi_points, "Points per axis of the xi grid (default: input's)");
        c->app->add_option("--mode", mode, "additive (sup xi.x + phi) | fenchel (sup xi.x - phi)")->capture_default_str();
        c->selftest = selftest_idempotent;
        c->body = [&] {
            if (grid_path.empty()) throw CLI::RequiredError("grid");
            if (mode != "additive" && mode != "fenchel") throw CLI::ValidationError("--mode", "expected additive or fenchel");
            auto in = open_input(grid_path);
            const GridFunction phi = read_grid_csv(in);
            const GridDomain& d = phi.domain();
            const auto lo = xi_lower.empty() ? d.lower() : parse_list(xi_lower, "--xi-lower");
            const auto hi = xi_upper.empty() ? d.upper() : parse_list(xi_upper, "--xi-upper");
            const GridDomain xi(lo, hi, xi_points ? xi_points : d.points_per_axis());
            const auto t = legendre_transform(phi, xi, mode == "additive" ? LegendreMode::Additive : LegendreMode::Fenchel);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_grid_csv(o, t, kDigits); });
            if (!common.svg_path.empty()) emit_to(common.svg_path, out, [&](std::ostream& o) { write_grid_svg(o, t); });
            return 0;
        };
    }

    // convolve
    std::string conv_a, conv_b, conv_semiring = "max-plus";
    {
        Command* c = add("convolve", "Sup- (or inf-) convolution of two grid functions");
        c->app->add_option("a", conv_a, "First grid CSV");
        c->app->add_option("b", conv_b, "Second grid CSV");
        c->app->add_option("--semiring", conv_semiring, "max-plus | min-plus")->capture_default_str();
        c->selftest = selftest_idempotent;
        c->body = [&] {
            if (conv_a.empty() || conv_b.empty()) throw CLI::RequiredError("a and b");
            const Semiring s = parse_semiring(conv_semiring);
            auto ia = open_input(conv_a);
            auto ib = open_input(conv_b);
            const GridFunction a = read_grid_csv(ia, s), b = read_grid_csv(ib, s);
            const auto r = sup_convolution(a, b);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_grid_csv(o, r, kDigits); });
            if (!common.svg_path.empty()) emit_to(common.svg_path, out, [&](std::ostream& o) { write_grid_svg(o, r); });
            return 0;
        };
    }

    // hj-evolve
    std::string hj_grid, hj_config;
    {
        Command* c = add("hj-evolve", "Lax-Oleinik dynamic programming for a scenario");
        c->app->add_option("initial", hj_grid, "Initial action S0 (grid CSV)");
        c->app->add_option("--config", hj_config, "Scenario file (key = value)");
        c->selftest = selftest_hj;
        c->body = [&] {
            if (hj_grid.empty() || hj_config.empty()) throw CLI::RequiredError("initial and --config");
            auto cfg = open_input(hj_config);
            const Scenario sc = read_scenario(cfg);
            auto in = open_input(hj_grid);
            const ActionState s = lax_oleinik_evolve({read_grid_csv(in, sc.system.semiring()), 0.0}, sc.system);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_grid_csv(o, s.S, kDigits); });
            if (!common.svg_path.empty()) emit_to(common.svg_path, out, [&](std::ostream& o) { write_grid_svg(o, s.S); });
            return 0;
        };
    }

    // hj-viscous
    std::string hv_grid, hv_config;
    double hv_h = 0.0;
    bool hv_from_action = false, hv_dequantize = false;
    {
        Command* c = add("hj-viscous", "Viscous (linear) evolution u_t at Planck parameter h");
        c->app->add_option("initial", hv_grid, "Initial u0 (or S0 with --from-action), grid CSV");
        c->app->add_option("--config", hv_config, "Scenario file (key = value)");
        c->app->add_option("--h", hv_h, "Override the scenario's h");
        c->app->add_flag("--from-action", hv_from_action, "Input is S0; u0 = exp(S0 / h)");
        c->app->add_flag("--dequantize", hv_dequantize, "Write h log u instead of u (implied by --from-action)");
        c->selftest = selftest_hj;
        c->body = [&] {
            if (hv_grid.empty() || hv_config.empty()) throw CLI::RequiredError("initial and --config");
            auto cfg = open_input(hv_config);
            const Scenario sc = read_scenario(cfg);
            const double h = hv_h > 0 ? hv_h : sc.h;
            auto in = open_input(hv_grid);
            GridFunction u0 = read_grid_csv(in);
            if (hv_from_action)
                for (auto& v : u0.values()) v = std::exp(v / h);
            GridFunction u = viscous_solve(u0, sc.system, h);
            if (hv_from_action || hv_dequantize) u = dequantize_solution(u, h);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_grid_csv(o, u, kDigits); });
            if (!common.svg_path.empty()) emit_to(common.svg_path, out, [&](std::ostream& o) { write_grid_svg(o, u); });
            return 0;
        };
    }

    // dequantize
    std::string dq_poly, dq_x, dq_h = "1,0.1,0.01";
    {
        Command* c = add("dequantize", "h log|f(exp(x/h))| along an h ladder, with the h -> 0 limit");
        c->app->add_option("poly", dq_poly, "Polynomial JSON");
        c->app->add_option("--x", dq_x, "Evaluation point (comma list)");
        c->app->add_option("--h", dq_h, "h values (comma list)")->capture_default_str();
        c->selftest = selftest_geometry;
        c->body = [&] {
            if (dq_poly.empty() || dq_x.empty()) throw CLI::RequiredError("poly and --x");
            auto in = open_input(dq_poly);
            const SparsePolynomial f = read_polynomial_json(in);
            const auto x = parse_list(dq_x, "--x");
            const auto hs = parse_list(dq_h, "--h");
            std::vector<DequantizedValue> vals;
            for (double h : hs) vals.push_back(dequantize_at(f, h, x));
            const double lim = dequantize_limit(f, x);
            emit_to(common.out_path, out, [&](std::ostream& o) {
                o << "h,value\n";
                for (std::size_t i = 0; i < hs.size(); ++i) o << num(hs[i]) << ',' << num(vals[i].value) << '\n';
                o << "0," << num(lim) << '\n';
            });
            return 0;
        };
    }

    // newton
    std::string nw_poly, nw_via = "hull";
    std::size_t nw_dirs = 3600;
    {
        Command* c = add("newton", "Newton polytope of a polynomial");
        c->app->add_option("poly", nw_poly, "Polynomial JSON");
        c->app->add_option("--via", nw_via, "hull | subdifferential")->capture_default_str();
        c->app->add_option("--directions", nw_dirs, "Directions for --via subdifferential")->capture_default_str();
        c->selftest = selftest_geometry;
        c->body = [&] {
            if (nw_poly.empty()) throw CLI::RequiredError("poly");
            if (nw_via != "hull" && nw_via != "subdifferential")
                throw CLI::ValidationError("--via", "expected hull or subdifferential");
            auto in = open_input(nw_poly);
            const SparsePolynomial f = read_polynomial_json(in);
            const Polytope p = nw_via == "hull" ? newton_polytope(f) : subdifferential_at_origin(f, nw_dirs);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_polytope_json(o, p); });
            if (!common.svg_path.empty()) emit_to(common.svg_path, out, [&](std::ostream& o) { write_polytope_svg(o, p); });
            return 0;
        };
    }

    // minkowski
    std::string mk_p, mk_q, mk_op = "mul";
    {
        Command* c = add("minkowski", "Minkowski semiring: hull of union (add) or Minkowski sum (mul)");
        c->app->add_option("p", mk_p, "Polytope JSON");
        c->app->add_option("q", mk_q, "Polytope JSON");
        c->app->add_option("--op", mk_op, "add | mul")->capture_default_str();
        c->selftest = selftest_geometry;
        c->body = [&] {
            if (mk_p.empty() || mk_q.empty()) throw CLI::RequiredError("p and q");
            if (mk_op != "add" && mk_op != "mul") throw CLI::ValidationError("--op", "expected add or mul");
            auto ip = open_input(mk_p);
            auto iq = open_input(mk_q);
            const Polytope p = read_polytope_json(ip), q = read_polytope_json(iq);
            const Polytope r = mk_op == "add" ? minkowski_add(p, q) : minkowski_mul(p, q);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_polytope_json(o, r); });
            if (!common.svg_path.empty()) emit_to(common.svg_path, out, [&](std::ostream& o) { write_polytope_svg(o, r); });
            return 0;
        };
    }

    // fractal-dim
    std::string fd_gen, fd_points, fd_s = "1,8,15", fd_local;
    bool fd_weighted = false;
    {
        Command* c = add("fractal-dim", "Box-counting or local dimension estimate");
        c->app->add_option("--generator", fd_gen, "cantor <depth> | segment <N> | sierpinski <depth> | square <N>");
        c->app->add_option("--points", fd_points, "Point CSV instead of a generator");
        c->app->add_flag("--weighted", fd_weighted, "Last CSV column is a weight");
        c->app->add_option("--s", fd_s, "Scales s (rho = e^-s): lo,hi,count")->capture_default_str();
        c->app->add_option("--local", fd_local, "Local dimension of the measure at this point");
        c->selftest = selftest_fractal;
        c->body = [&] {
            if (fd_gen.empty() == fd_points.empty()) throw CLI::ValidationError("give exactly one of --generator, --points");
            const auto sv = parse_list(fd_s, "--s");
            if (sv.size() != 3 || sv[2] < 3 || sv[2] != std::floor(sv[2]))
                throw CLI::ValidationError("--s", "expected lo,hi,count with count >= 3");
            const auto s = linspace(sv[0], sv[1], std::size_t(sv[2]));
            SampledMeasure mu;
            if (!fd_gen.empty()) {
                mu = uniform_measure(generate_cloud(fd_gen));
            } else {
                auto in = open_input(fd_points);
                mu = read_points_csv(in, fd_weighted);
            }
            DimensionEstimate e;
            if (!fd_local.empty()) {
                e = local_dimension(mu, parse_list(fd_local, "--local"), s);
            } else {
                e = hb_dimension(mu.atoms, s);
            }
            nlohmann::json j;
            j["kind"] = fd_local.empty() ? "box-counting" : "local";
            j["points"] = mu.atoms.size();
            j["slope"] = jnum(e.slope);
            j["intercept"] = jnum(e.intercept);
            if (fd_local.empty()) j["shifted_slope"] = jnum(e.shifted_slope);
            j["resolution_warning"] = e.resolution_warning;
            j["series"] = nlohmann::json::array();
            for (std::size_t i = 0; i < e.s.size(); ++i)
                j["series"].push_back({{"s", jnum(e.s[i])}, {"log", jnum(e.log_values[i])}, {"ratio", jnum(e.ratios[i])}});
            emit_to(common.out_path, out, [&](std::ostream& o) { o << j.dump(1) << '\n'; });
            return 0;
        };
    }

    // amoeba
    std::string am_poly, am_window;
    double am_h = 1.0;
    std::size_t am_slices = 200, am_angles = 64;
    bool am_spine = false;
    {
        Command* c = add("amoeba", "Sample Log_h of the zero set of f_h by slicing");
        c->app->add_option("poly", am_poly, "Polynomial JSON (two variables)");
        c->app->add_option("--h", am_h, "Deformation parameter")->capture_default_str();
        c->app->add_option("--window", am_window, "xmin,xmax,ymin,ymax (required)");
        c->app->add_option("--slices", am_slices, "Slices per axis")->capture_default_str();
        c->app->add_option("--angles", am_angles, "Phase samples per slice")->capture_default_str();
        c->app->add_flag("--spine", am_spine, "Overlay the tropical curve in the SVG");
        c->selftest = selftest_amoeba;
        c->body = [&] {
            if (am_poly.empty() || am_window.empty()) throw CLI::RequiredError("poly and --window");
            const Window w = parse_window(am_window);
            auto in = open_input(am_poly);
            const SparsePolynomial f = read_polynomial_json(in);
            const auto s = sample_amoeba(deform_polynomial(f, am_h), am_h, w, am_slices, am_angles, common.jobs);
            emit_to(common.out_path, out, [&](std::ostream& o) { write_amoeba_csv(o, s, kDigits); });
            if (!common.svg_path.empty()) {
                PlanarPLSet spine;
                if (am_spine) spine = tropical_variety(valuation_polynomial(f));
                emit_to(common.svg_path, out, [&](std::ostream& o) { write_amoeba_svg(o, s, am_spine ? &spine : nullptr); });
            }
            return 0;
        };
    }

    // tropical-curve
    std::string tc_poly, tc_window = "-3,3,-3,3";
    {
        Command* c = add("tropical-curve", "Corner locus of the valuation tropical polynomial");
        c->app->add_option("poly", tc_poly, "Polynomial JSON (two variables)");
        c->app->add_option("--window", tc_window, "SVG frame xmin,xmax,ymin,ymax")->capture_default_str();
        c->selftest = selftest_amoeba;
        c->body = [&] {
            if (tc_poly.empty()) throw CLI::RequiredError("poly");
            auto in = open_input(tc_poly);
            const SparsePolynomial f = read_polynomial_json(in);
            const PlanarPLSet t = tropical_variety(valuation_polynomial(f));
            emit_to(common.out_path, out, [&](std::ostream& o) { write_pl_set_json(o, t, kDigits); });
            if (!common.svg_path.empty()) {
                AmoebaSample empty;
                empty.window = parse_window(tc_window);
                emit_to(common.svg_path, out, [&](std::ostream& o) { write_amoeba_svg(o, empty, &t); });
            }
            return 0;
        };
    }

    // converge
    std::string cv_poly, cv_h = "1,0.5,0.25", cv_window;
    std::size_t cv_slices = 200, cv_angles = 64;
    {
        Command* c = add("converge", "Hausdorff distance of deformed amoebas to the tropical curve");
        c->app->add_option("poly", cv_poly, "Polynomial JSON (two variables)");
        c->app->add_option("--h", cv_h, "Decreasing h values (comma list)")->capture_default_str();
        c->app->add_option("--window", cv_window, "xmin,xmax,ymin,ymax (required)");
        c->app->add_option("--slices", cv_slices, "Slices per axis")->capture_default_str();
        c->app->add_option("--angles", cv_angles, "Phase samples per slice")->capture_default_str();
        c->selftest = selftest_amoeba;
        c->body = [&] {
            if (cv_poly.empty() || cv_window.empty()) throw CLI::RequiredError("poly and --window");
            const Window w = parse_window(cv_window);
            const auto hs = parse_list(cv_h, "--h");
            auto in = open_input(cv_poly);
            const SparsePolynomial f = read_polynomial_json(in);
            const auto rows = convergence_study(f, hs, w, cv_slices, cv_angles, common.jobs);
            emit_to(common.out_path, out, [&](std::ostream& o) {
                o << "h,distance,points,max_residual\n";
                for (const auto& r : rows)
                    o << num(r.h) << ',' << num(r.distance) << ',' << r.points << ',' << num(r.max_residual) << '\n';
            });
            return 0;
        };
    }

    try {
        app.parse(argc, argv);
        for (const Command& c : commands) {
            if (!c.app->parsed()) continue;
            if (common.selftest) return c.selftest(out);
            return c.body();
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace maslov::cli
