#include "maslov/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "maslov/error.hpp"
#include "maslov/semiring.hpp"

namespace maslov {

namespace {

constexpr double kMergeTol = 1e-9;

void require_plane(const SparsePolynomial& f, const char* op) {
    if (f.dim() != 2) throw ShapeError(std::string(op) + " works on polynomials in two variables");
}

// Horner evaluation of p(w) = sum_j c[j] w^j and its derivative.
std::pair<Complex, Complex> horner(const std::vector<Complex>& c, Complex w) {
    Complex p = 0.0, dp = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
        dp = dp * w + p;
        p = p * w + c[j];
    }
    return {p, dp};
}

std::vector<Complex> univariate_roots(const std::vector<Complex>& c) {
    const std::size_t m = c.size() - 1;
    std::vector<Complex> roots;
    if (m == 0) return roots;
    if (m == 1) {
        roots.push_back(-c[0] / c[1]);
    } else {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(Eigen::Index(m), Eigen::Index(m));
        for (std::size_t i = 1; i < m; ++i) companion(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
        for (std::size_t i = 0; i < m; ++i) companion(Eigen::Index(i), Eigen::Index(m - 1)) = -c[i] / c[m];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);
    }
    // Newton polishing; keep a step only if it lowers |p|
    for (Complex& w : roots) {
        for (int it = 0; it < 8; ++it) {
            const auto [p, dp] = horner(c, w);
            if (p == Complex(0.0) || dp == Complex(0.0)) break;
            const Complex cand = w - p / dp;
            if (std::abs(horner(c, cand).first) >= std::abs(p)) break;
            w = cand;
        }
    }
    return roots;
}

double normalised_residual(const SparsePolynomial& f, const std::array<Complex, 2>& z) {
    Complex sum = 0.0;
    double scale = 0.0;
    for (const Term& t : f.terms()) {
        const Complex m = t.coef * std::pow(z[0], t.exp[0]) * std::pow(z[1], t.exp[1]);
        sum += m;
        scale += std::abs(m);
    }
    return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

// Clip p + t d, t in [t0, t1], to the window; false if nothing remains.
bool clip(const Point2& p, const Point2& d, double& t0, double& t1, const Window& w) {
    const double lo[2] = {w.xmin, w.ymin}, hi[2] = {w.xmax, w.ymax};
    for (int a = 0; a < 2; ++a) {
        if (d[a] == 0.0) {
            if (p[a] < lo[a] || p[a] > hi[a]) return false;
            continue;
        }
        double ta = (lo[a] - p[a]) / d[a], tb = (hi[a] - p[a]) / d[a];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
    }
    return t0 <= t1;
}

struct Piece {
    Point2 a, b;
};

std::vector<Piece> clipped_pieces(const PlanarPLSet& s, const Window& w) {
    std::vector<Piece> out;
    auto add = [&](const Point2& p, const Point2& d, double t0, double t1) {
        if (clip(p, d, t0, t1, w)) out.push_back({{p[0] + t0 * d[0], p[1] + t0 * d[1]}, {p[0] + t1 * d[0], p[1] + t1 * d[1]}});
    };
    for (const auto& e : s.edges) {
        const Point2 p = s.vertices[e[0]], q = s.vertices[e[1]];
        add(p, {q[0] - p[0], q[1] - p[1]}, 0.0, 1.0);
    }
    for (const Ray& r : s.rays) add(s.vertices[r.base], {double(r.dir[0]), double(r.dir[1])}, 0.0, kInf);
    // isolated vertices (no incident edge or ray) still belong to the set
    std::vector<bool> used(s.vertices.size(), false);
    for (const auto& e : s.edges) used[e[0]] = used[e[1]] = true;
    for (const Ray& r : s.rays) used[r.base] = true;
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (!used[i] && w.contains(s.vertices[i])) out.push_back({s.vertices[i], s.vertices[i]});
    return out;
}

double point_segment_distance(const Point2& p, const Piece& s) {
    const double dx = s.b[0] - s.a[0], dy = s.b[1] - s.a[1];
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p[0] - s.a[0]) * dx + (p[1] - s.a[1]) * dy) / len2, 0.0, 1.0);
    return std::hypot(p[0] - (s.a[0] + t * dx), p[1] - (s.a[1] + t * dy));
}

// Uniform bucket grid for nearest-neighbour queries in the plane.
class NearestIndex {
public:
    explicit NearestIndex(std::span<const Point2> pts) : pts_(pts.begin(), pts.end()) {
        lo_ = {kInf, kInf};
        Point2 hi{kNegInf, kNegInf};
        for (const auto& p : pts_)
            for (int a = 0; a < 2; ++a) {
                lo_[a] = std::min(lo_[a], p[a]);
                hi[a] = std::max(hi[a], p[a]);
            }
        const double extent = std::max({hi[0] - lo_[0], hi[1] - lo_[1], 1e-12});
        cells_ = std::max<std::size_t>(1, std::size_t(std::sqrt(double(pts_.size()))));
        cell_ = extent / double(cells_) * (1.0 + 1e-12);
        buckets_.assign(cells_ * cells_, {});
        for (std::size_t i = 0; i < pts_.size(); ++i) buckets_[bucket(pts_[i])].push_back(i);
    }

    double distance(const Point2& q) const {
        const long cx = coord(q[0], 0), cy = coord(q[1], 1);
        double best = kInf;
        for (long r = 0;; ++r) {
            for (long i = cx - r; i <= cx + r; ++i)
                for (long j = cy - r; j <= cy + r; ++j) {
                    if (std::max(std::labs(i - cx), std::labs(j - cy)) != r) continue;
                    if (i < 0 || j < 0 || i >= long(cells_) || j >= long(cells_)) continue;
                    for (std::size_t k : buckets_[std::size_t(i) * cells_ + std::size_t(j)])
                        best = std::min(best, std::hypot(pts_[k][0] - q[0], pts_[k][1] - q[1]));
                }
            // cells at ring r+1 are at least r cells away from q
            if (best <= double(r) * cell_) return best;
            if (r > 2 * long(cells_) + 2) {
                if (best < kInf) return best;
                // q far outside the indexed box: fall back to a scan
                for (const auto& p : pts_) best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
                return best;
            }
        }
    }

private:
    long coord(double v, int a) const { return long(std::floor((v - lo_[a]) / cell_)); }
    std::size_t bucket(const Point2& p) const {
        const auto cx = std::clamp<long>(coord(p[0], 0), 0, long(cells_) - 1);
        const auto cy = std::clamp<long>(coord(p[1], 1), 0, long(cells_) - 1);
        return std::size_t(cx) * cells_ + std::size_t(cy);
    }

    std::vector<Point2> pts_;
    Point2 lo_{};
    std::size_t cells_ = 1;
    double cell_ = 1.0;
    std::vector<std::vector<std::size_t>> buckets_;
};

std::vector<Point2> clip_points(std::span<const Point2> pts, const Window& w) {
    std::vector<Point2> out;
    for (const auto& p : pts)
        if (w.contains(p)) out.push_back(p);
    return out;
}

std::array<long long, 2> primitive(long long x, long long y) {
    const long long g = std::gcd(std::llabs(x), std::llabs(y));
    return {x / g, y / g};
}

}  // namespace

void Window::validate() const {
    if (!(xmin < xmax) || !(ymin < ymax) || !std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) ||
        !std::isfinite(ymax)) {
        throw ParameterError("window must satisfy xmin < xmax and ymin < ymax");
    }
}

TropicalPolynomial valuation_polynomial(const SparsePolynomial& f) {
    TropicalPolynomial tf;
    tf.dim = f.dim();
    for (const Term& t : f.terms()) tf.terms.push_back({t.exp, std::log(std::abs(t.coef))});
    return tf;
}

SparsePolynomial deform_polynomial(const SparsePolynomial& f, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("deform_polynomial requires h > 0");
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        const double mod = std::abs(t.coef);
        if (mod == 0.0) throw ParameterError("deform_polynomial: zero coefficient");
        terms.push_back({t.exp, h == 1.0 ? t.coef : t.coef / mod * std::pow(mod, 1.0 / h)});
    }
    return SparsePolynomial(f.dim(), std::move(terms));
}

AmoebaSlice amoeba_slice(const SparsePolynomial& f, double h, double x, std::size_t angle_samples, std::size_t axis) {
    require_plane(f, "amoeba_slice");
    if (!(h > 0.0)) throw ParameterError("amoeba_slice requires h > 0");
    if (axis > 1) throw ParameterError("amoeba_slice axis must be 0 or 1");
    const std::size_t other = 1 - axis;
    int degree = 0;
    for (const Term& t : f.terms()) degree = std::max(degree, t.exp[other]);

    AmoebaSlice out;
    const double modulus_log = x / h;
    for (std::size_t k = 0; k < angle_samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * double(k) / double(angle_samples);
        std::vector<Complex> c(std::size_t(degree) + 1, 0.0);
        for (const Term& t : f.terms()) {
            const int p = t.exp[axis];
            c[std::size_t(t.exp[other])] += t.coef * std::polar(std::exp(double(p) * modulus_log), double(p) * theta);
        }
        std::size_t lo = 0, hi = c.size();
        while (lo < c.size() && c[lo] == Complex(0.0)) ++lo;
        if (lo == c.size()) {
            out.degenerate = true;
            continue;
        }
        while (c[hi - 1] == Complex(0.0)) --hi;
        const std::vector<Complex> reduced(c.begin() + long(lo), c.begin() + long(hi));
        const Complex fixed = std::polar(std::exp(modulus_log), theta);
        for (const Complex& w : univariate_roots(reduced)) {
            if (w == Complex(0.0) || !std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            std::array<Complex, 2> z;
            z[axis] = fixed;
            z[other] = w;
            out.max_residual = std::max(out.max_residual, normalised_residual(f, z));
            Point2 p;
            p[axis] = x;
            p[other] = h * std::log(std::abs(w));
            out.points.push_back(p);
        }
    }
    return out;
}

AmoebaSample sample_amoeba(const SparsePolynomial& f, double h, const Window& window, std::size_t slices,
                           std::size_t angle_samples, std::size_t jobs) {
    require_plane(f, "sample_amoeba");
    window.validate();
    AmoebaSample sample;
    sample.h = h;
    sample.window = window;
    if (slices == 0) return sample;

    auto position = [&](double lo, double hi, std::size_t i) {
        return slices == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * double(i) / double(slices - 1);
    };
    const std::size_t tasks = 2 * slices;
    std::vector<AmoebaSlice> results(tasks);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const std::size_t axis = t / slices, i = t % slices;
            const double x = axis == 0 ? position(window.xmin, window.xmax, i) : position(window.ymin, window.ymax, i);
            results[t] = amoeba_slice(f, h, x, angle_samples, axis);
        }
    };
    jobs = std::clamp<std::size_t>(jobs, 1, tasks);
    if (jobs == 1) {
        run(0, tasks);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (tasks + jobs - 1) / jobs;
        for (std::size_t b = 0; b < tasks; b += chunk) pool.emplace_back(run, b, std::min(tasks, b + chunk));
        for (auto& th : pool) th.join();
    }
    for (const AmoebaSlice& r : results) {
        sample.max_residual = std::max(sample.max_residual, r.max_residual);
        if (r.degenerate) ++sample.degenerate_slices;
        for (const Point2& p : r.points)
            if (window.contains(p)) sample.points.push_back(p);
    }
    return sample;
}

PlanarPLSet tropical_variety(const TropicalPolynomial& tf) {
    if (tf.dim != 2) throw DomainError("tropical_variety works in the plane only");
    if (tf.terms.size() < 2) throw DomainError("a tropical polynomial with fewer than two terms has no corner locus");
    const auto& T = tf.terms;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i].exp.size() != 2) throw ShapeError("tropical term exponent must have length 2");
        for (std::size_t j = 0; j < i; ++j)
            if (T[i].exp == T[j].exp) throw ParameterError("repeated exponent in tropical polynomial");
    }

    double scale = 1.0;
    for (const auto& t : T) scale = std::max(scale, std::fabs(t.value));
    const double eps = 1e-12 * scale;

    // Each tie line of terms a, b restricted to where a and b dominate:
    // base + t * dir for t in [lo, hi].
    struct Cell {
        Point2 base;
        std::array<long long, 2> dir;
        double lo, hi;
    };
    std::vector<Cell> cells;
    for (std::size_t a = 0; a < T.size(); ++a)
        for (std::size_t b = a + 1; b < T.size(); ++b) {
            const long long wx = T[a].exp[0] - T[b].exp[0], wy = T[a].exp[1] - T[b].exp[1];
            const double c = T[a].value - T[b].value;
            const double w2 = double(wx * wx + wy * wy);
            const Point2 base{-c * double(wx) / w2, -c * double(wy) / w2};
            const auto dir = primitive(-wy, wx);
            double lo = kNegInf, hi = kInf;
            bool empty = false;
            for (std::size_t o = 0; o < T.size() && !empty; ++o) {
                if (o == a || o == b) continue;
                const long long ex = T[a].exp[0] - T[o].exp[0], ey = T[a].exp[1] - T[o].exp[1];
                const double alpha = T[a].value - T[o].value + double(ex) * base[0] + double(ey) * base[1];
                const long long beta = ex * dir[0] + ey * dir[1];
                if (beta == 0) {
                    empty = alpha < -eps;
                } else if (beta > 0) {
                    lo = std::max(lo, -alpha / double(beta));
                } else {
                    hi = std::min(hi, -alpha / double(beta));
                }
            }
            if (empty || !(hi - lo > kMergeTol)) continue;
            cells.push_back({base, dir, lo, hi});
        }

    PlanarPLSet out;
    auto vertex_id = [&](const Point2& p) {
        for (std::size_t i = 0; i < out.vertices.size(); ++i)
            if (std::hypot(out.vertices[i][0] - p[0], out.vertices[i][1] - p[1]) <= kMergeTol * scale) return i;
        out.vertices.push_back(p);
        return out.vertices.size() - 1;
    };
    auto at = [](const Cell& c, double t) { return Point2{c.base[0] + t * double(c.dir[0]), c.base[1] + t * double(c.dir[1])}; };
    for (const Cell& c : cells) {
        if (std::isfinite(c.lo)) vertex_id(at(c, c.lo));
        if (std::isfinite(c.hi)) vertex_id(at(c, c.hi));
    }

    auto add_edge = [&](std::size_t i, std::size_t j) {
        std::array<std::size_t, 2> e{std::min(i, j), std::max(i, j)};
        if (i != j && std::find(out.edges.begin(), out.edges.end(), e) == out.edges.end()) out.edges.push_back(e);
    };
    auto add_ray = [&](std::size_t base, std::array<long long, 2> dir) {
        for (const Ray& r : out.rays)
            if (r.base == base && r.dir == dir) return;
        out.rays.push_back({base, dir});
    };

    for (const Cell& c : cells) {
        // split at every known vertex on this cell
        const double len2 = double(c.dir[0] * c.dir[0] + c.dir[1] * c.dir[1]);
        std::vector<std::pair<double, std::size_t>> stops;
        for (std::size_t i = 0; i < out.vertices.size(); ++i) {
            const Point2& v = out.vertices[i];
            const double t = ((v[0] - c.base[0]) * double(c.dir[0]) + (v[1] - c.base[1]) * double(c.dir[1])) / len2;
            const Point2 q = at(c, t);
            if (std::hypot(q[0] - v[0], q[1] - v[1]) > kMergeTol * scale) continue;
            if (t < c.lo - kMergeTol || t > c.hi + kMergeTol) continue;
            stops.emplace_back(t, i);
        }
        std::sort(stops.begin(), stops.end());
        if (stops.empty()) {
            // a full line with no vertex on it
            const std::size_t v = vertex_id(c.base);
            add_ray(v, c.dir);
            add_ray(v, {-c.dir[0], -c.dir[1]});
            continue;
        }
        for (std::size_t k = 1; k < stops.size(); ++k) add_edge(stops[k - 1].second, stops[k].second);
        if (!std::isfinite(c.lo)) add_ray(stops.front().second, {-c.dir[0], -c.dir[1]});
        if (!std::isfinite(c.hi)) add_ray(stops.back().second, c.dir);
    }
    return out;
}

double hausdorff_distance(std::span<const Point2> a, const PlanarPLSet& b, const Window& window, double pitch) {
    window.validate();
    if (!(pitch > 0.0)) throw ParameterError("hausdorff pitch must be positive");
    const std::vector<Point2> pts = clip_points(a, window);
    const std::vector<Piece> pieces = clipped_pieces(b, window);
    if (pts.empty()) throw DomainError("hausdorff_distance: point set is empty inside the window");
    if (pieces.empty()) throw DomainError("hausdorff_distance: PL set misses the window");

    double forward = 0.0;
    for (const auto& p : pts) {
        double best = kInf;
        for (const Piece& s : pieces) best = std::min(best, point_segment_distance(p, s));
        forward = std::max(forward, best);
    }
    const NearestIndex index(pts);
    double backward = 0.0;
    for (const Piece& s : pieces) {
        const double len = std::hypot(s.b[0] - s.a[0], s.b[1] - s.a[1]);
        const auto steps = std::size_t(std::ceil(len / pitch));
        for (std::size_t k = 0; k <= steps; ++k) {
            const double t = steps ? double(k) / double(steps) : 0.0;
            backward = std::max(backward, index.distance({s.a[0] + t * (s.b[0] - s.a[0]), s.a[1] + t * (s.b[1] - s.a[1])}));
        }
    }
    return std::max(forward, backward);
}

double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b, const Window& window) {
    window.validate();
    const std::vector<Point2> pa = clip_points(a, window), pb = clip_points(b, window);
    if (pa.empty() || pb.empty()) throw DomainError("hausdorff_distance: a point set is empty inside the window");
    const NearestIndex ia(pa), ib(pb);
    double d = 0.0;
    for (const auto& p : pa) d = std::max(d, ib.distance(p));
    for (const auto& p : pb) d = std::max(d, ia.distance(p));
    return d;
}

std::vector<ConvergenceRow> convergence_study(const SparsePolynomial& f, std::span<const double> h_values,
                                              const Window& window, std::size_t slices, std::size_t angle_samples,
                                              std::size_t jobs) {
    require_plane(f, "convergence_study");
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        if (!(h_values[i] > 0.0)) throw ParameterError("h values must be positive");
        if (i && !(h_values[i] < h_values[i - 1])) throw ParameterError("h values must be decreasing");
    }
    const PlanarPLSet spine = tropical_variety(valuation_polynomial(f));
    std::vector<ConvergenceRow> rows;
    for (double h : h_values) {
        const AmoebaSample s = sample_amoeba(deform_polynomial(f, h), h, window, slices, angle_samples, jobs);
        rows.push_back({h, hausdorff_distance(s.points, spine, window), s.points.size(), s.max_residual});
    }
    return rows;
}

void write_pl_set_json(std::ostream& out, const PlanarPLSet& s, int digits) {
    // numbers go through format_ext so output is stable at the requested precision
    auto num = [&](double v) { return nlohmann::json::parse(format_ext(v, digits)); };
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : s.vertices) j["vertices"].push_back({num(v[0]), num(v[1])});
    j["edges"] = s.edges;
    j["rays"] = nlohmann::json::array();
    for (const Ray& r : s.rays) j["rays"].push_back({{"base", r.base}, {"dir", r.dir}});
    out << j.dump() << '\n';
}

void write_amoeba_csv(std::ostream& out, const AmoebaSample& s, int digits) {
    out << "x,y\n";
    for (const auto& p : s.points) out << format_ext(p[0], digits) << ',' << format_ext(p[1], digits) << '\n';
}

void write_amoeba_svg(std::ostream& out, const AmoebaSample& s, const PlanarPLSet* spine) {
    const Window& w = s.window;
    const double size = 600.0;
    const double k = size / std::max(w.xmax - w.xmin, w.ymax - w.ymin);
    auto sx = [&](double x) { return (x - w.xmin) * k; };
    auto sy = [&](double y) { return (w.ymax - y) * k; };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sx(w.xmax) << "\" height=\"" << sy(w.ymin) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << sx(w.xmax) << "\" height=\"" << sy(w.ymin)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& p : s.points) out << "<circle r=\"0.8\" fill=\"#c0504d\" cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\"/>\n";
    if (spine) {
        for (const Piece& piece : clipped_pieces(*spine, w)) {
            out << "<line stroke=\"#1f4e79\" stroke-width=\"2\" x1=\"" << sx(piece.a[0]) << "\" y1=\"" << sy(piece.a[1])
                << "\" x2=\"" << sx(piece.b[0]) << "\" y2=\"" << sy(piece.b[1]) << "\"/>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace maslov
