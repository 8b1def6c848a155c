#include "maslov/polytope.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <string>

#include <json.hpp>

#include "json_io.hpp"

#include "maslov/error.hpp"

namespace maslov {

namespace {

using Wide = __int128;
using V3 = std::array<Wide, 3>;

V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 cross(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Wide dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
bool is_zero(const V3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }
Wide wide_gcd(Wide a, Wide b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

V3 primitive(V3 v) {
    const Wide g = wide_gcd(wide_gcd(v[0], v[1]), v[2]);
    if (g > 1)
        for (auto& c : v) c /= g;
    return v;
}

// 2-D monotone chain on (u, v) coordinates, strict: collinear points dropped.
// Returns indices into `pts`.
std::vector<std::size_t> monotone_chain(const std::vector<std::array<Wide, 2>>& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
    };
    std::vector<std::size_t> hull(2 * order.size());
    std::size_t k = 0;
    for (std::size_t i : order) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], i) <= 0) --k;
        hull[k++] = i;
    }
    for (std::size_t t = order.size() - 1, lower = k + 1; t-- > 0;) {
        const std::size_t i = order[t];
        while (k >= lower && turn(hull[k - 2], hull[k - 1], i) <= 0) --k;
        hull[k++] = i;
    }
    hull.resize(k > 1 ? k - 1 : k);
    return hull;
}

// Extreme points of a full-dimensional 3-D set via supporting planes through
// point triples: a point is a vertex iff its tight facet normals have rank 3.
std::vector<std::size_t> extreme_points_3d(const std::vector<V3>& pts) {
    const std::size_t m = pts.size();
    std::set<std::pair<V3, Wide>> facets;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                V3 n = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (is_zero(n)) continue;
                bool pos = false, neg = false;
                for (std::size_t l = 0; l < m && !(pos && neg); ++l) {
                    const Wide s = dot(n, sub(pts[l], pts[i]));
                    pos |= s > 0;
                    neg |= s < 0;
                }
                if (pos && neg) continue;
                if (pos) n = {-n[0], -n[1], -n[2]};
                n = primitive(n);
                facets.emplace(n, dot(n, pts[i]));
            }

    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < m; ++p) {
        std::vector<V3> tight;
        for (const auto& [n, off] : facets)
            if (dot(n, pts[p]) == off) tight.push_back(n);
        bool full_rank = false;
        for (std::size_t a = 0; a < tight.size() && !full_rank; ++a)
            for (std::size_t b = a + 1; b < tight.size() && !full_rank; ++b) {
                const V3 c = cross(tight[a], tight[b]);
                if (is_zero(c)) continue;
                for (std::size_t d = b + 1; d < tight.size() && !full_rank; ++d) full_rank = dot(c, tight[d]) != 0;
            }
        if (full_rank) out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<LatticePoint> convex_hull_vertices(std::size_t dim, std::vector<LatticePoint> points) {
    if (dim == 0 || dim > 3) throw ShapeError("convex hull supports dimensions 1 to 3, got " + std::to_string(dim));
    if (points.empty()) throw ShapeError("convex hull of an empty set");
    for (const auto& p : points)
        if (p.size() != dim) throw ShapeError("point of the wrong dimension in convex hull");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<V3> pts(points.size(), V3{0, 0, 0});
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t a = 0; a < dim; ++a) pts[i][a] = points[i][a];

    // affine dimension via a maximal independent frame at pts[0]
    const std::size_t m = pts.size();
    std::size_t i1 = m, i2 = m, i3 = m;
    for (std::size_t i = 1; i < m && i1 == m; ++i) i1 = i;
    V3 normal{0, 0, 0};
    if (i1 < m)
        for (std::size_t i = 1; i < m; ++i) {
            normal = cross(sub(pts[i1], pts[0]), sub(pts[i], pts[0]));
            if (!is_zero(normal)) {
                i2 = i;
                break;
            }
        }
    if (i2 < m)
        for (std::size_t i = 1; i < m; ++i)
            if (dot(normal, sub(pts[i], pts[0])) != 0) {
                i3 = i;
                break;
            }

    std::vector<std::size_t> keep;
    if (i1 == m) {
        keep = {0};
    } else if (i2 == m) {
        const V3 dir = sub(pts[i1], pts[0]);
        auto key = [&](std::size_t i) { return dot(dir, sub(pts[i], pts[0])); };
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < m; ++i) {
            if (key(i) < key(lo)) lo = i;
            if (key(i) > key(hi)) hi = i;
        }
        keep = {lo, hi};
    } else if (i3 == m) {
        // planar: drop the coordinate where the normal is nonzero
        std::size_t drop = 0;
        while (normal[drop] == 0) ++drop;
        const std::size_t u = drop == 0 ? 1 : 0, v = drop == 2 ? 1 : 2;
        std::vector<std::array<Wide, 2>> flat(m);
        for (std::size_t i = 0; i < m; ++i) flat[i] = {pts[i][u], pts[i][v]};
        keep = monotone_chain(flat);
    } else {
        keep = extreme_points_3d(pts);
    }

    std::vector<LatticePoint> out;
    out.reserve(keep.size());
    for (std::size_t i : keep) out.push_back(points[i]);
    std::sort(out.begin(), out.end());
    return out;
}

Polytope Polytope::hull(std::size_t dim, std::vector<LatticePoint> points) {
    return Polytope(dim, convex_hull_vertices(dim, std::move(points)));
}

Polytope minkowski_add(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw ShapeError("minkowski_add: dimensions differ");
    std::vector<LatticePoint> all = p.vertices();
    all.insert(all.end(), q.vertices().begin(), q.vertices().end());
    return Polytope::hull(p.dim(), std::move(all));
}

Polytope minkowski_mul(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw ShapeError("minkowski_mul: dimensions differ");
    std::vector<LatticePoint> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) {
            LatticePoint s(a.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return Polytope::hull(p.dim(), std::move(sums));
}

void write_polytope_json(std::ostream& out, const Polytope& p) {
    nlohmann::json j;
    j["dim"] = p.dim();
    j["vertices"] = p.vertices();
    out << j.dump() << '\n';
}

Polytope read_polytope_json(std::istream& in) {
    const nlohmann::json j = detail::parse_json(in, "polytope JSON");
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        auto pts = j.at("vertices").get<std::vector<LatticePoint>>();
        return Polytope::hull(dim, std::move(pts));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("polytope JSON: ") + e.what(), 0);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("polytope JSON: ") + e.what(), 0);
    }
}

void write_polytope_svg(std::ostream& out, const Polytope& p) {
    std::int64_t lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    auto y_of = [&](const LatticePoint& v) { return p.dim() >= 2 ? v[1] : 0; };
    for (const auto& v : p.vertices()) {
        lo_x = std::min(lo_x, v[0]);
        hi_x = std::max(hi_x, v[0]);
        lo_y = std::min(lo_y, y_of(v));
        hi_y = std::max(hi_y, y_of(v));
    }
    const double scale = 40.0, pad = 20.0;
    const double w = double(hi_x - lo_x) * scale + 2 * pad, h = double(hi_y - lo_y) * scale + 2 * pad;
    auto sx = [&](std::int64_t x) { return pad + double(x - lo_x) * scale; };
    auto sy = [&](std::int64_t y) { return h - pad - double(y - lo_y) * scale; };

    // vertices in counter-clockwise order for the polygon outline
    std::vector<LatticePoint> ring = p.vertices();
    if (p.dim() == 2 && ring.size() > 2) {
        std::vector<std::array<Wide, 2>> flat;
        for (const auto& v : ring) flat.push_back({v[0], v[1]});
        std::vector<LatticePoint> ordered;
        for (std::size_t i : monotone_chain(flat)) ordered.push_back(ring[i]);
        ring = std::move(ordered);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<polygon fill=\"#9cc3e6\" stroke=\"#1f4e79\" stroke-width=\"2\" points=\"";
    for (const auto& v : ring) out << sx(v[0]) << ',' << sy(y_of(v)) << ' ';
    out << "\"/>\n";
    for (const auto& v : ring) out << "<circle r=\"3\" cx=\"" << sx(v[0]) << "\" cy=\"" << sy(y_of(v)) << "\"/>\n";
    out << "</svg>\n";
}

}  // namespace maslov
